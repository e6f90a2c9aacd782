"""Optimal SL2 data for the distinguished orbits of one exceptional type (default E7)."""
import sys

from goodfilt.rootsys import build_root_system
from goodfilt.sl2data import load_distinguished_orbits
from goodfilt.verifier import sl2_orbit_report, weight_name


def main(host="E7"):
    rs = build_root_system(host)
    for o in load_distinguished_orbits(host):
        rep = sl2_orbit_report(rs, o)
        th = rep.threshold
        print(f"{o.bala_carter_label:<9} max grade {th.max_grade:>2}  "
              f"X^[p]=0 from p >= {th.vanish_above_2p} (no grade >= 2p: {th.vanish_from_2p})  condition {rep.condition}")
        for w, sc in rep.restrictions.items():
            print(f"    {weight_name(w)}: {sc}")


if __name__ == "__main__":
    main(*sys.argv[1:])
