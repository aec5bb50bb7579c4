#!/usr/bin/env python3
"""Solve a free-format MPS minimization with HiGHS (via scipy) and print
the objective, including the constant stored as the negated RHS of the
objective row.

usage: solve_mps.py FILE [--solution OUT]
"""
import argparse
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


def read_mps(path):
    section = None
    obj_row = None
    row_kind, row_index = {}, {}
    cols, col_index = [], {}
    entries = []
    rhs, constant = {}, 0.0
    upper = {}
    with open(path) as f:
        for line in f:
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            tok = line.split()
            if section == "ROWS":
                kind, name = tok
                if kind == "N":
                    obj_row = obj_row or name
                else:
                    row_kind[name] = kind
                    row_index[name] = len(row_index)
            elif section == "COLUMNS":
                col = tok[0]
                if col not in col_index:
                    col_index[col] = len(cols)
                    cols.append(col)
                for row, val in zip(tok[1::2], tok[2::2]):
                    entries.append((row, col_index[col], float(val)))
            elif section == "RHS":
                for row, val in zip(tok[1::2], tok[2::2]):
                    if row == obj_row:
                        constant = -float(val)
                    else:
                        rhs[row] = float(val)
            elif section == "BOUNDS":
                kind, _, col, val = tok
                if kind != "UP":
                    sys.exit(f"unsupported bound type {kind}")
                upper[col] = float(val)
    if any(k != "L" for k in row_kind.values()):
        sys.exit("only L rows are supported")
    c = np.zeros(len(cols))
    r, k, v = [], [], []
    for row, j, val in entries:
        if row == obj_row:
            c[j] += val
        else:
            r.append(row_index[row])
            k.append(j)
            v.append(val)
    a = coo_matrix((v, (r, k)), shape=(len(row_index), len(cols))).tocsr()
    b = np.zeros(len(row_index))
    for row, val in rhs.items():
        b[row_index[row]] = val
    bounds = [(0.0, upper.get(col)) for col in cols]
    return cols, c, a, b, bounds, constant


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("mps")
    ap.add_argument("--solution")
    args = ap.parse_args()
    cols, c, a, b, bounds, constant = read_mps(args.mps)
    res = linprog(c, A_ub=a if a.shape[0] else None, b_ub=b if a.shape[0] else None, bounds=bounds, method="highs")
    if res.status == 2:
        print("infeasible")
        return
    if res.status != 0:
        sys.exit(f"solver failed: {res.message}")
    print(f"{res.fun + constant:.10f}")
    if args.solution:
        with open(args.solution, "w") as f:
            for name, val in zip(cols, res.x):
                f.write(f"{name} {float(val)!r}\n")


if __name__ == "__main__":
    main()
