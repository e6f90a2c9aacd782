"""Derive distinguished weighted Dynkin diagrams of exceptional types by enumeration.

Distinguished orbits have even labellings (entries 0 or 2) with dim g(0) = dim g(2).
Every such labelling is printed with its orbit dimension, and compared to the bundled data.
"""
from itertools import product

from goodfilt.rootsys import build_root_system
from goodfilt.sl2data import grading_profile, load_distinguished_orbits


def main():
    for host in ("G2", "F4", "E6", "E7", "E8"):
        rs = build_root_system(host)
        found = []
        for labels in product((0, 2), repeat=rs.rank):
            if not any(labels):
                continue
            prof = grading_profile(rs, labels)
            if prof[0] == prof[2]:
                found.append((rs.dim - prof[0], labels))
        found.sort(reverse=True)
        bundled = {o.labels: o.bala_carter_label for o in load_distinguished_orbits(host)}
        for dim, labels in found:
            print(f"{host}\t{bundled.get(labels, '?'):<8}\t{''.join(map(str, labels))}\tdim {dim}")
        assert set(bundled) == {lab for _, lab in found}, host


if __name__ == "__main__":
    main()
