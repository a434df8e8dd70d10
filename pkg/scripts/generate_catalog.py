"""One-off generator for the shipped scenario catalog JSON files."""

import json
import pathlib

OUT = pathlib.Path(__file__).parents[1] / "src" / "lawcheck" / "catalog"
OUT.mkdir(exist_ok=True)

FLAT_POLAR = {
    "params": ["r", "psi"],
    "box": [[0, 1], [0, "2*pi"]],
    "metric": [["1", "0"], ["0", "r*r"]],
    "chart_map": ["r*cos(psi)", "r*sin(psi)"],
}

DISK_CIRCLE = [{
    "name": "rim",
    "params": ["t"],
    "box": [[0, "2*pi"]],
    "embed": ["1", "t"],
    "outward": ["1", "0"],
}]


def sphere_patch(theta_max):
    return {
        "params": ["th", "ps"],
        "box": [[0, theta_max], ["-pi/2", "3*pi/2"]],
        "metric": [["1", "0"], ["0", "sin(th)*sin(th)"]],
        "chart_map": ["sin(th)*cos(ps)", "sin(th)*sin(ps)", "cos(th)"],
    }


def cap_rim(theta_max):
    return [{
        "name": "rim",
        "params": ["t"],
        "box": [["-pi/2", "3*pi/2"]],
        "embed": [theta_max, "t"],
        "outward": ["1", "0"],
    }]


TILTED_THETA = "-sin(0.35)*cos(th)*cos(ps) - cos(0.35)*sin(th)"
TILTED_PSI = "sin(0.35)*sin(ps)/sin(th)"

SCENARIOS = [
    {
        "name": "disk-constant",
        "description": "Flat unit disk with a constant unit field; one inward "
                       "tangential zero on the rim carries the whole law.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": FLAT_POLAR,
        "boundaries": DISK_CIRCLE,
        "field": {"components": ["cos(psi)", "-sin(psi)/r"]},
        "interior_singularities": [],
        "tangential_singularities": [
            {"name": "west", "boundary": 0, "location": ["pi"], "radius": 0.1},
            {"name": "east", "boundary": 0, "location": [0], "radius": 0.1},
        ],
        "expected": {"ind_v": 0, "ind_dminus": 1},
    },
    {
        "name": "disk-radial",
        "description": "Radial source on the flat disk; the field restricts to "
                       "the outward normal, so the interior index alone gives chi.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": FLAT_POLAR,
        "boundaries": DISK_CIRCLE,
        "field": {"components": ["r", "0"]},
        "interior_singularities": [{
            "name": "center", "ambient": [0, 0], "exclusion_radius": 0.3,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.15,
            "field": ["x", "y"],
        }],
        "tangential_singularities": [],
        "expected": {"ind_v": 0 + 1, "ind_dminus": 0},
    },
    {
        "name": "disk-double-vortex",
        "description": "Squared-variable field with a degree-2 zero at the "
                       "center and an inward tangential zero of index -1.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": FLAT_POLAR,
        "boundaries": DISK_CIRCLE,
        "field": {"components": ["r*r*cos(psi)", "r*sin(psi)"]},
        "interior_singularities": [{
            "name": "center", "ambient": [0, 0], "exclusion_radius": 0.3,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.15,
            "field": ["x*x - y*y", "2*x*y"],
        }],
        "tangential_singularities": [
            {"name": "west", "boundary": 0, "location": ["pi"], "radius": 0.1},
            {"name": "east", "boundary": 0, "location": [0], "radius": 0.1},
        ],
        "expected": {"ind_v": 2, "ind_dminus": -1},
    },
    {
        "name": "disk-rotational",
        "description": "Rotational field on the flat disk: tangent to the rim "
                       "everywhere, center vortex of index 1.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": FLAT_POLAR,
        "boundaries": DISK_CIRCLE,
        "field": {"components": ["0", "1"]},
        "interior_singularities": [{
            "name": "center", "ambient": [0, 0], "exclusion_radius": 0.3,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.15,
            "field": ["-y", "x"],
        }],
        "tangential_singularities": [],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
    {
        "name": "disk-saddle",
        "description": "Saddle at the center (index -1) balanced by two inward "
                       "tangential zeros of index +1 each.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": FLAT_POLAR,
        "boundaries": DISK_CIRCLE,
        "field": {"components": ["r*cos(2*psi)", "-sin(2*psi)"]},
        "interior_singularities": [{
            "name": "center", "ambient": [0, 0], "exclusion_radius": 0.3,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.15,
            "field": ["x", "-y"],
        }],
        "tangential_singularities": [
            {"name": "north", "boundary": 0, "location": ["pi/2"], "radius": 0.1},
            {"name": "south", "boundary": 0, "location": ["3*pi/2"], "radius": 0.1},
            {"name": "east", "boundary": 0, "location": [0], "radius": 0.1},
            {"name": "west", "boundary": 0, "location": ["pi"], "radius": 0.1},
        ],
        "expected": {"ind_v": -1, "ind_dminus": 2},
    },
    {
        "name": "annulus-constant",
        "description": "Flat annulus with a constant field; inward zeros on the "
                       "two rims cancel, matching chi = 0.",
        "dimension": 2, "chi": 0, "seed": 0,
        "patch": {
            "params": ["r", "psi"],
            "box": [[0.4, 1], [0, "2*pi"]],
            "metric": [["1", "0"], ["0", "r*r"]],
            "chart_map": ["r*cos(psi)", "r*sin(psi)"],
        },
        "boundaries": [
            {"name": "outer", "params": ["t"], "box": [[0, "2*pi"]],
             "embed": ["1", "t"], "outward": ["1", "0"]},
            {"name": "inner", "params": ["t"], "box": [[0, "2*pi"]],
             "embed": ["0.4", "t"], "outward": ["-1", "0"]},
        ],
        "field": {"components": ["cos(psi)", "-sin(psi)/r"]},
        "interior_singularities": [],
        "tangential_singularities": [
            {"name": "outer-west", "boundary": 0, "location": ["pi"], "radius": 0.1},
            {"name": "outer-east", "boundary": 0, "location": [0], "radius": 0.1},
            {"name": "inner-east", "boundary": 1, "location": [0], "radius": 0.1},
            {"name": "inner-west", "boundary": 1, "location": ["pi"], "radius": 0.1},
        ],
        "expected": {"ind_v": 0, "ind_dminus": 0},
    },
    {
        "name": "annulus-rotational",
        "description": "Rotational field on the flat annulus: no zeros at all, "
                       "law reduces to 0 = 0.",
        "dimension": 2, "chi": 0, "seed": 0,
        "patch": {
            "params": ["r", "psi"],
            "box": [[0.4, 1], [0, "2*pi"]],
            "metric": [["1", "0"], ["0", "r*r"]],
            "chart_map": ["r*cos(psi)", "r*sin(psi)"],
        },
        "boundaries": [
            {"name": "outer", "params": ["t"], "box": [[0, "2*pi"]],
             "embed": ["1", "t"], "outward": ["1", "0"]},
            {"name": "inner", "params": ["t"], "box": [[0, "2*pi"]],
             "embed": ["0.4", "t"], "outward": ["-1", "0"]},
        ],
        "field": {"components": ["0", "1"]},
        "interior_singularities": [],
        "tangential_singularities": [],
        "expected": {"ind_v": 0, "ind_dminus": 0},
    },
    {
        "name": "hemisphere-tilted",
        "description": "Round upper hemisphere with the gradient of a tilted "
                       "height function: interior max plus two opposite inward "
                       "rim zeros of cancelling index.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": sphere_patch("pi/2"),
        "boundaries": cap_rim("pi/2"),
        "field": {"components": [TILTED_THETA, TILTED_PSI]},
        "interior_singularities": [{
            "name": "summit",
            "ambient": ["-sin(0.35)", 0, "cos(0.35)"], "exclusion_radius": 0.25,
            "chart_params": ["a", "b"], "center": [0.35, "pi"], "radius": 0.12,
            "field": ["-sin(0.35)*cos(a)*cos(b) - cos(0.35)*sin(a)",
                       "sin(0.35)*sin(b)/sin(a)"],
        }],
        "tangential_singularities": [
            {"name": "front", "boundary": 0, "location": [0], "radius": 0.1},
            {"name": "back", "boundary": 0, "location": ["pi"], "radius": 0.1},
        ],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
    {
        "name": "hemisphere-radial",
        "description": "Geodesic radial field from the pole of the hemisphere; "
                       "the rim restriction is the outward normal.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": sphere_patch("pi/2"),
        "boundaries": cap_rim("pi/2"),
        "field": {"components": ["sin(th)", "0"]},
        "interior_singularities": [{
            "name": "pole", "ambient": [0, 0, 1], "exclusion_radius": 0.25,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.1,
            "field": ["x", "y"],
        }],
        "tangential_singularities": [],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
    {
        "name": "cap-tilted",
        "description": "Non-hemispherical spherical cap (colatitude pi/3) with "
                       "the tilted gradient field.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": sphere_patch("pi/3"),
        "boundaries": cap_rim("pi/3"),
        "field": {"components": [TILTED_THETA, TILTED_PSI]},
        "interior_singularities": [{
            "name": "summit",
            "ambient": ["-sin(0.35)", 0, "cos(0.35)"], "exclusion_radius": 0.25,
            "chart_params": ["a", "b"], "center": [0.35, "pi"], "radius": 0.12,
            "field": ["-sin(0.35)*cos(a)*cos(b) - cos(0.35)*sin(a)",
                       "sin(0.35)*sin(b)/sin(a)"],
        }],
        "tangential_singularities": [
            {"name": "front", "boundary": 0, "location": [0], "radius": 0.1},
            {"name": "back", "boundary": 0, "location": ["pi"], "radius": 0.1},
        ],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
    {
        "name": "cap-radial",
        "description": "Geodesic radial field on the pi/3 cap; pole index via a "
                       "graph-chart direction field.",
        "dimension": 2, "chi": 1, "seed": 0,
        "patch": sphere_patch("pi/3"),
        "boundaries": cap_rim("pi/3"),
        "field": {"components": ["sin(th)", "0"]},
        "interior_singularities": [{
            "name": "pole", "ambient": [0, 0, 1], "exclusion_radius": 0.25,
            "chart_params": ["x", "y"], "center": [0, 0], "radius": 0.1,
            "field": ["x", "y"],
        }],
        "tangential_singularities": [],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
    {
        "name": "ball3-constant",
        "description": "Flat 3-ball with a constant field; one inward "
                       "tangential zero on the sphere carries the law.",
        "dimension": 3, "chi": 1, "seed": 0,
        "patch": {
            "params": ["rho", "th", "ps"],
            "box": [[0, 1], [0, "pi"], [0, "2*pi"]],
            "metric": [["1", "0", "0"],
                       ["0", "rho*rho", "0"],
                       ["0", "0", "rho*rho*sin(th)*sin(th)"]],
            "chart_map": ["rho*sin(th)*cos(ps)", "rho*sin(th)*sin(ps)",
                          "rho*cos(th)"],
        },
        "boundaries": [{
            "name": "sphere", "params": ["a", "b"],
            "box": [[0, "pi"], ["-pi/2", "3*pi/2"]],
            "embed": ["1", "a", "b"],
            "outward": ["1", "0", "0"],
        }],
        "field": {"components": ["sin(th)*cos(ps)", "cos(th)*cos(ps)/rho",
                                  "-sin(ps)/(rho*sin(th))"]},
        "interior_singularities": [],
        "tangential_singularities": [
            {"name": "back", "boundary": 0, "location": ["pi/2", "pi"],
             "radius": 0.15},
            {"name": "front", "boundary": 0, "location": ["pi/2", 0],
             "radius": 0.15},
        ],
        "expected": {"ind_v": 0, "ind_dminus": 1},
    },
    {
        "name": "ball3-radial",
        "description": "Radial source in the flat 3-ball; restriction to the "
                       "sphere is the outward normal.",
        "dimension": 3, "chi": 1, "seed": 0,
        "patch": {
            "params": ["rho", "th", "ps"],
            "box": [[0, 1], [0, "pi"], [0, "2*pi"]],
            "metric": [["1", "0", "0"],
                       ["0", "rho*rho", "0"],
                       ["0", "0", "rho*rho*sin(th)*sin(th)"]],
            "chart_map": ["rho*sin(th)*cos(ps)", "rho*sin(th)*sin(ps)",
                          "rho*cos(th)"],
        },
        "boundaries": [{
            "name": "sphere", "params": ["a", "b"],
            "box": [[0, "pi"], ["-pi/2", "3*pi/2"]],
            "embed": ["1", "a", "b"],
            "outward": ["1", "0", "0"],
        }],
        "field": {"components": ["rho", "0", "0"]},
        "interior_singularities": [{
            "name": "center", "ambient": [0, 0, 0], "exclusion_radius": 0.3,
            "chart_params": ["x", "y", "z"], "center": [0, 0, 0], "radius": 0.15,
            "field": ["x", "y", "z"],
        }],
        "tangential_singularities": [],
        "expected": {"ind_v": 1, "ind_dminus": 0},
    },
]

# disk-radial expected was written as 0 + 1 above for clarity; normalize
for sc in SCENARIOS:
    sc["expected"] = {k: int(v) for k, v in sc["expected"].items()}

for sc in SCENARIOS:
    path = OUT / f"{sc['name']}.json"
    path.write_text(json.dumps(sc, indent=2, sort_keys=False) + "\n")
    print("wrote", path)
print(len(SCENARIOS), "scenarios")
