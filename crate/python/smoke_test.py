"""Smoke test for the realtame extension module.

Build and install it first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import json
import os
import tempfile

import realtame

SQUARE = {
    "elements": ["0,0", "1,0", "0,1", "1,1"],
    "covers": [["0,0", "1,0"], ["0,0", "0,1"], ["1,0", "1,1"], ["0,1", "1,1"]],
}


def check_poset():
    p = realtame.Poset(SQUARE["elements"], [tuple(c) for c in SQUARE["covers"]])
    assert len(p) == 4
    assert p.leq("0,0", "1,1") and not p.leq("1,0", "0,1")
    assert p.is_upper_semilattice() and p.is_distributive() and p.is_consistent()
    assert (p.dim("1,1"), p.par_dim("1,1")) == (2, 2)
    assert p.to_dot().startswith("digraph")
    return p


def check_grid(p):
    g = realtame.Grid(p, ["-1/2"])
    assert len(g) == 9
    assert g.transfer("1,1[0,1:-0.3;1,0:-0.7]") == "1,0[0,0:-1/2]"


def check_betti():
    functor = {"poset": SQUARE, "p": 2, "dims": {"0,0": 1}}
    text = json.dumps(functor)
    for method in ("koszul", "resolution"):
        assert realtame.functor_betti(text, 1, method) == {"1,0": 1, "0,1": 1}
        assert realtame.functor_betti(text, 2, method) == {"1,1": 1}
    try:
        realtame.functor_betti(json.dumps({**functor, "p": 4}), 0)
    except ValueError:
        pass
    else:
        raise AssertionError("4 is not prime")

    tame = {
        "grid": {"base_poset": {"elements": ["0", "1"], "covers": [["0", "1"]]}, "V": ["-1/2"]},
        "p": 2,
        "dims": {"1[0:-1/2]": 1, "1": 1},
        "maps": {"1[0:-1/2]->1": [[1]]},
    }
    assert realtame.tame_betti(json.dumps(tame), 0) == {"1[0:-1/2]": 1}


def check_pipeline():
    with tempfile.TemporaryDirectory() as d:
        config = {
            "dataset": {"points": ["p", "q"], "dist": [[0, 1], [1, 0]], "m": 1},
            "poset": {"elements": ["0", "1"], "covers": [["0", "1"]]},
            "U": {"0": ["p"], "1": ["p", "q"]},
            "grid": {"V": ["-1/2"]},
            "epsilon": "1/2",
        }
        path = os.path.join(d, "config.json")
        with open(path, "w") as f:
            json.dump(config, f)
        out = json.loads(realtame.run_pipeline(path))
        assert out["extended_subsets"]["1[0:-1/2]"] == ["p"]
        assert out["betti"][0] == {"0": 1, "1": 1}


if __name__ == "__main__":
    check_grid(check_poset())
    check_betti()
    check_pipeline()
    print("smoke test passed")
