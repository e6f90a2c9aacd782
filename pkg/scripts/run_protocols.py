"""Run the fundamental-weight protocols and write replayable certificates.

    python scripts/run_protocols.py [--out certs] [--hosts F4 E6 E7 E8] [--convention rho]
"""
import argparse
import time
from pathlib import Path

from goodfilt.verifier import E7_REFERENCE_CHAIN, exceptional_protocol, replay


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="certs")
    ap.add_argument("--hosts", nargs="+", default=["F4", "E6", "E7", "E8"])
    ap.add_argument("--convention", default="rho", choices=["rho", "minus_rho"])
    ap.add_argument("--saturate", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    runs = [(h, None) for h in args.hosts]
    if "E7" in args.hosts:
        runs.append(("E7", E7_REFERENCE_CHAIN))
    for host, chain in runs:
        t0 = time.time()
        cert, res = exceptional_protocol(host, convention=args.convention, saturate=args.saturate, constructions=chain)
        tag = f"{host}-{'reference' if chain else 'search'}-{args.convention}"
        (out / f"{tag}.json").write_text(cert.dumps())
        (out / f"{tag}.txt").write_text(cert.transcript() + "\n")
        assert replay(cert) == res
        print(f"{tag:<24} {str(res):<20} {len(cert.steps):>3} steps  {time.time() - t0:6.1f}s")


if __name__ == "__main__":
    main()
