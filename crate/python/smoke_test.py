"""Smoke test for the compiled `macrotab` module.

Run after `pip install --no-build-isolation ./crates/py`.
"""

import math

import macrotab


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    dims = {
        ("lagrange", 2, "alfeld"): 10,
        ("hct", 3, None): 12,
        ("hct-red", None, None): 9,
        ("hct", 4, None): 19,
        ("ps6", None, None): 9,
        ("ps12", None, None): 12,
        ("jm", None, None): 15,
    }
    for (name, degree, variant), dim in dims.items():
        el = macrotab.Element(name, degree, variant)
        assert el.dim == dim, (name, el.dim)
        assert el.duality_error() < 1e-8, name

    # partition of unity for a nodal Lagrange basis
    el = macrotab.Element("lagrange", 2, "alfeld")
    values = el.tabulate([[0.2, 0.3], [0.6, 0.1]])
    for p in range(2):
        assert close(sum(values[0][b][p][0] for b in range(el.dim)), 1.0)

    # identity geometry gives M = I
    hct = macrotab.Element("hct3")
    m = hct.transform([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            assert close(v, 1.0 if i == j else 0.0, 1e-12)

    costs = {row[0]: row[-1] for row in macrotab.cost_table()}
    assert costs == {"PS6": 2916, "PS12": 10368, "HCT3": 5184, "HCT4": 17328, "A5": 11025}, costs

    points, weights, cells = macrotab.macro_rule("alfeld", 4)
    assert len(points) == len(weights) == len(cells)
    assert close(math.fsum(weights), 0.5)

    try:
        macrotab.Element("bogus")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown element accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
