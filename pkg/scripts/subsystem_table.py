"""Prime conditions for the non-involution maximal-rank subsystems of exceptional groups.

    python scripts/subsystem_table.py [--all-embeddings]
"""
import argparse

from goodfilt.rootsys import build_root_system
from goodfilt.subsys import involution_centralizer_test, maximal_rank_subsystems
from goodfilt.verifier import subsystem_prime_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--all-embeddings", action="store_true", help="report every root set, not one per type")
    args = ap.parse_args()
    print(f"{'host':<5}{'subsystem':<12}{'rho':<22}{'minus_rho':<22}alcove")
    for host in ("F4", "G2", "E6", "E7", "E8"):
        rs = build_root_system(host)
        seen = set()
        for emb in maximal_rank_subsystems(rs):
            if involution_centralizer_test(emb) or (emb.sub_type in seen and not args.all_embeddings):
                continue
            seen.add(emb.sub_type)
            a = subsystem_prime_report(rs, emb)
            b = subsystem_prime_report(rs, emb, convention="minus_rho")
            print(f"{host:<5}{emb.sub_type:<12}{str(a.condition):<22}{str(b.condition):<22}p >= {a.alcove_prime}")


if __name__ == "__main__":
    main()
