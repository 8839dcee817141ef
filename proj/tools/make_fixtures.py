#!/usr/bin/env python3
"""Writes fixtures/*.json.

Every expected value is computed here, independently of the library, and the
script refuses to write a fixture whose CLI output disagrees with it.
Usage: make_fixtures.py path/to/kls fixtures/
"""
import itertools
import json
import subprocess
import sys
from fractions import Fraction
from math import comb
from pathlib import Path

KLS, OUT = sys.argv[1], Path(sys.argv[2])


# ---- polynomials as coefficient lists ----

def ptrim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [0]


def padd(a, b):
    n = max(len(a), len(b))
    return ptrim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return ptrim(out)


def ptext(p):
    return ",".join(str(Fraction(c)) for c in ptrim(p))


def pdet(m):
    """Determinant of a square matrix of polynomials by cofactor expansion."""
    if len(m) == 1:
        return m[0][0]
    out = [0]
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = pmul(m[0][j], pdet(minor))
        out = padd(out, term if j % 2 == 0 else [-c for c in term])
    return out


# ---- lattice point oracle ----

def solve(a, b):
    """Solves a x = b over Q for square invertible a, or returns None."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def in_cell(x, m, verts):
    """x in m * conv(verts) for an affinely independent full-dimensional cell."""
    d = len(x)
    a = [[v[i] for v in verts] for i in range(d)] + [[1] * len(verts)]
    lam = solve(a, list(x) + [m])
    return lam is not None and all(l >= 0 for l in lam)


def interior(x, m, vertices, facets):
    return all(sum(n * xi for n, xi in zip(normal, x)) < off * m for normal, off in facets) if m else False


def hull_facets(vertices):
    """Inequalities normal . x <= off of a full-dimensional polytope, from affinely spanning vertex subsets."""
    d = len(vertices[0])
    out = set()
    for sub in itertools.combinations(vertices, d):
        rows = [[Fraction(v[i] - sub[0][i]) for i in range(d)] for v in sub[1:]]
        # normal by cofactors of the (d-1) x d difference matrix
        normal = []
        for j in range(d):
            minor = [[r[i] for i in range(d) if i != j] for r in rows]
            normal.append(pdet([[[c] for c in r] for r in minor])[0] * (-1) ** j if minor else (-1) ** j)
        if all(c == 0 for c in normal):
            continue
        off = sum(n * c for n, c in zip(normal, sub[0]))
        vals = [sum(n * c for n, c in zip(normal, v)) - off for v in vertices]
        if all(v <= 0 for v in vals):
            out.add((tuple(normal), off))
        elif all(v >= 0 for v in vals):
            out.add((tuple(-n for n in normal), -off))
    return list(out)


def fixed_counts(cx, affine, M):
    """Lattice points of mP (and of its interior) fixed by an affine map, m = 0..M."""
    d = cx["dim"]
    verts = cx["vertices"]
    cells = [[verts[i] for i in c] for c in cx["cells"]]
    facets = hull_facets(verts)
    lo = [min(v[i] for v in verts) for i in range(d)]
    hi = [max(v[i] for v in verts) for i in range(d)]
    ehr, inner = [], []
    for m in range(M + 1):
        e = i = 0
        for x in itertools.product(*[range(lo[k] * m, hi[k] * m + 1) for k in range(d)]):
            if not any(in_cell(x, m, c) for c in cells):
                continue
            y = [sum(affine[r][k] * x[k] for k in range(d)) + affine[r][d] * m for r in range(d)]
            if list(y) != list(x):
                continue
            e += 1
            i += interior(x, m, verts, facets)
        ehr.append(e)
        inner.append(i)
    return ehr, inner


def hstar_oracle(cx, affine, M=8):
    ehr, _ = fixed_counts(cx, affine, M)
    n = len(affine)
    # det(I - t rho) clears the denominator of the fixed-point series
    rho = [[[1 if r == c else 0, -affine[r][c]] for c in range(n)] for r in range(n)]
    prod = pmul(ehr, pdet(rho))
    assert all(c == 0 for c in prod[cx["dim"] + 2: M + 1]), "series is not rational of the expected degree"
    return ptrim(prod[: cx["dim"] + 2])


# ---- documents ----

def run(path, command, *args):
    p = subprocess.run([KLS, command, str(path), "--format", "json", *args], capture_output=True, text=True)
    data = json.loads(p.stdout) if p.stdout.strip() else {}
    return p.returncode, data


def write(name, doc, expects):
    """Runs each expectation, checks it against the oracle-supplied match, then writes the fixture."""
    path = OUT / f"{name}.json"
    doc = {"v": 1, **doc}
    path.write_text(json.dumps(doc, indent=1) + "\n")
    for ex in expects:
        args = []
        for k, v in ex.get("options", {}).items():
            flag = {"checks": "--check", "M": "--order"}.get(k, "--" + k.replace("_", "-"))
            if isinstance(v, bool):
                args += [flag] if v else []
            elif isinstance(v, list):
                args += [flag, *map(str, v)]
            else:
                args += [flag, str(v)]
        status, data = run(path, ex["command"], *args)
        want = ex.get("status", 0)
        if status != want or not partial(data, ex.get("match", {})):
            sys.exit(f"{name}: {ex['command']} {args} gave status {status}: {json.dumps(data)[:600]}")
    doc["expect"] = expects
    path.write_text(json.dumps(doc, indent=1) + "\n")


def partial(actual, expected):
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and partial(actual[k], v) for k, v in expected.items())
    if isinstance(expected, list):
        return isinstance(actual, list) and len(actual) == len(expected) and all(
            partial(a, e) for a, e in zip(actual, expected))
    return actual == expected


def classes_by_element(path, command, options, key, oracle):
    """Queries the class table once, then pairs each representative with the oracle value for its matrix."""
    args = [a for k, v in options.items() for a in ({"M": "--order"}.get(k, "--" + k), str(v))]
    _, data = run(path, command, *args)
    table = data
    for k in key:
        table = table[k]
    return [{"element": {"matrix": c["element"]["matrix"]}, "poly": oracle(c["element"]["matrix"])} for c in table]


# ---- fixtures ----

def boolean(n):
    z = ",".join(str(comb(n, k)) for k in range(n + 1))
    write(f"boolean_{n}", {"schema": "poset", "builder": "boolean", "n": n}, [
        {"command": "check", "options": {"checks": ["eulerian"]}},
        {"command": "kls", "options": {"what": "z"}, "match": {"intervals": [{"poly": z}]}},
        {"command": "kls", "options": {"what": "g"}, "match": {"intervals": [{"poly": "1"}]}},
        {"command": "kls", "options": {"what": "f"}, "match": {"intervals": [{"poly": "1"}]}},
        {"command": "kls", "options": {"what": "h"}, "match": {"value": "1"}},
        {"command": "kls", "options": {"what": "toric-h"}, "match": {"value": ",".join(["1"] * n)}},
    ])


def polygon(s):
    k = s + 3
    g = "1" if s == 0 else f"1,{s}"
    ell = "0" if s == 0 else f"0,{s}"
    write(f"polygon_{k}_vertex_cone", {"schema": "triple", "poset": {"builder": "polygon", "k": k}, "q": "v0"}, [
        {"command": "check"},
        {"command": "kls", "options": {"what": "g"}, "match": {"intervals": [{"z": "empty", "zp": "P", "poly": g}]}},
        {"command": "kls", "options": {"what": "f"}, "match": {"intervals": [{"poly": g}]}},
        {"command": "kls", "options": {"what": "z"}, "match": {"intervals": [{"poly": f"1,{2 * s + 3},{2 * s + 3},1"}]}},
        {"command": "local", "match": {"gamma": {"h": g, "ell": ell, "delta_ell": ell}}},
        {"command": "verify", "options": {"suite": "all"}},
    ])


def lattice_polygon(name, vertices, group):
    """Triple from the vertex cone at vertices[0]; l_1 is the permutation character on the diagonals from it."""
    k = len(vertices)
    far = list(range(2, k - 1))

    def ell(m):
        fixed = 0
        for v in far:
            w = [sum(m[r][c] * vertices[v][c] for c in range(2)) for r in range(2)]
            fixed += w == vertices[v]
        return f"0,{fixed}" if far else "0"

    path = OUT / f"{name}.json"
    doc = {"schema": "triple", "polytope": {"dim": 2, "vertices": vertices}, "face": [0], "group": {"linear": group}}
    path.write_text(json.dumps({"v": 1, **doc}))
    table = classes_by_element(path, "local", {}, ["gamma", "ell"], ell)
    write(name, doc, [
        {"command": "check"},
        {"command": "local", "match": {"gamma": {"ell": table}}},
        {"command": "verify", "options": {"suite": "all"}},
    ])


def complex_fixture(name, cx, unimodular):
    path = OUT / f"{name}.json"
    doc = {"schema": "complex", **cx}
    path.write_text(json.dumps({"v": 1, **doc}))
    hstar = classes_by_element(path, "ehrhart", {"what": "hstar"}, ["classes"], lambda a: ptext(hstar_oracle(cx, a)))
    M = 6
    _, series = run(path, "ehrhart", "--what", "series", "-M", str(M))
    ser = []
    for c in series["classes"]:
        e, i = fixed_counts(cx, c["element"]["matrix"], M)
        ser.append({"element": {"matrix": c["element"]["matrix"]}, "ehr": ptext(e), "interior": ptext(i)})
    expects = [
        {"command": "check"},
        {"command": "ehrhart", "options": {"what": "hstar"}, "match": {"classes": hstar, "routes_agree": True}},
        {"command": "ehrhart", "options": {"what": "local-hstar"}, "match": {"routes_agree": True}},
        {"command": "ehrhart", "options": {"what": "series", "M": M}, "match": {"classes": ser}},
        {"command": "ehrhart", "options": {"what": "reciprocity", "M": M}},
        {"command": "verify", "options": {"suite": "all"}},
    ]
    if unimodular:
        # the local h and l of the triangulation are h* and l*
        _, lstar = run(path, "ehrhart", "--what", "local-hstar")
        ell = [{"element": {"matrix": c["element"]["matrix"]}, "poly": c["poly"]} for c in lstar["classes"]]
        expects.append({"command": "local", "match": {"gamma": {"h": hstar, "ell": ell}}})
    write(name, doc, expects)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for n in range(1, 6):
        boolean(n)
    for s in range(7):
        polygon(s)

    write("chain_3_not_eulerian", {"schema": "poset", "builder": "chain", "k": 3}, [
        {"command": "check", "options": {"checks": ["lower-eulerian"]}, "status": 1,
         "match": {"results": [{"ok": False, "witness": [0, 2]}]}},
    ])
    write("square_corrupted_kernel", {
        "schema": "triple", "poset": {"builder": "polygon", "k": 4}, "q": "v0",
        "kernel": {"overrides": [{"interval": ["empty", "e0"], "poly": "1,1"}]}}, [
        {"command": "kls", "options": {"what": "g"}, "status": 1, "match": {"error": {"code": "MirrorConstraintViolated"}}},
        {"command": "verify", "options": {"suite": "theorem-g"}, "status": 1},
        {"command": "verify", "options": {"suite": "theorem-g", "kernel": "eulerian"}},
    ])
    ss = {"builder": "semisuspension", "of": {"builder": "boolean", "n": 2}}
    write("glued_non_eulerian_action", {
        "schema": "poset", "builder": "glue", "a": ss, "b": ss,
        "group": {"generators": [{"zhat'": "{1,2}'", "{1,2}'": "zhat'"}]}}, [
        {"command": "verify", "options": {"suite": "equivariant"}, "status": 1,
         "match": {"refused": True, "results": [{"witness": {"element": 1}}]}},
    ])

    write("square_fan_rotation", {
        "schema": "fan", "dim": 2, "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]],
        "cones": [[0], [1], [2], [3], [0, 1], [1, 2], [2, 3], [0, 3]], "group": {"linear": [[[0, -1], [1, 0]]]}}, [
        {"command": "check"},
        {"command": "verify", "options": {"suite": "all"}},
        {"command": "kls", "options": {"what": "g", "interval": ["{}", "{0,1}"]},
         "match": {"intervals": [{"classes": [{"poly": "1"}]}]}},
    ])
    hexrays = [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]]
    write("hexagon_fan_dihedral", {
        "schema": "fan", "dim": 2, "rays": hexrays, "cones": [[i] for i in range(6)] + [[i, (i + 1) % 6] for i in range(6)],
        "group": {"linear": [[[1, -1], [1, 0]], [[0, 1], [1, 0]]]}}, [
        {"command": "check"},
        {"command": "verify", "options": {"suite": "all"}},
    ])

    lattice_polygon("square_vertex_cone_reflection", [[0, 0], [1, 0], [1, 1], [0, 1]], [[[0, 1], [1, 0]]])
    lattice_polygon("hexagon_vertex_cone_reflection",
                    [[0, 0], [0, 1], [-1, 1], [-2, 0], [-2, -1], [-1, -1]], [[[1, -1], [0, -1]]])
    lattice_polygon("triangle_vertex_cone", [[0, 0], [1, 0], [0, 1]], [])

    for face in ["0**", "00*", "000"]:
        write(f"cube_relative_g_{face.replace('*', 's')}", {"schema": "poset", "builder": "cube", "d": 3}, [
            {"command": "local", "options": {"relative_g": face}},
        ])

    complex_fixture("unit_square", {
        "dim": 2, "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]], "cells": [[0, 1, 2], [0, 2, 3]],
        "group": {"affine": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[-1, 0, 1], [0, -1, 1], [0, 0, 1]]]}}, True)
    cube = [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    idx = {tuple(v): i for i, v in enumerate(cube)}
    cells = []
    for p in itertools.permutations(range(3)):
        x = [0, 0, 0]
        cell = [idx[tuple(x)]]
        for k in p:
            x[k] = 1
            cell.append(idx[tuple(x)])
        cells.append(cell)
    complex_fixture("unit_cube_freudenthal", {
        "dim": 3, "vertices": cube, "cells": cells,
        "group": {"affine": [[[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                             [[0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                             [[-1, 0, 0, 1], [0, -1, 0, 1], [0, 0, -1, 1], [0, 0, 0, 1]]]}}, True)
    for k in range(1, 5):
        complex_fixture(f"segment_{k}_unit_cells", {
            "dim": 1, "vertices": [[i] for i in range(k + 1)], "cells": [[i, i + 1] for i in range(k)],
            "group": {"affine": [[[-1, k], [0, 1]]]}}, True)
    complex_fixture("segment_2_one_cell", {
        "dim": 1, "vertices": [[0], [2]], "cells": [[0, 1]], "group": {"affine": [[[-1, 2], [0, 1]]]}}, False)
    complex_fixture("triangle_2_one_cell", {
        "dim": 2, "vertices": [[0, 0], [2, 0], [0, 2]], "cells": [[0, 1, 2]],
        "group": {"affine": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]]]}}, False)
    complex_fixture("reflexive_triangle_rotation", {
        "dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [-1, -1]], "cells": [[0, 1, 2], [0, 2, 3], [0, 3, 1]],
        "group": {"affine": [[[0, -1, 0], [1, -1, 0], [0, 0, 1]]]}}, True)


if __name__ == "__main__":
    main()
