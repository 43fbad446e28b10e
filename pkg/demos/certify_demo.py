"""Walk through a nonexistence certificate for order 8p^3, step by step.

Run:  python3 demos/certify_demo.py [p]
"""

import sys

from pds_forge import certificate_to_json, certify, replay_certificate


def main() -> None:
    p = int(sys.argv[1]) if len(sys.argv) > 1 else 5
    cert = certify(p)
    print(f"certifying: no nontrivial regular PDS in any abelian group of order 8*{p}^3")
    print()
    for step in cert.steps:
        indent = "  " if step.parent else ""
        print(f"{indent}{step.id:>4}  {step.name:<24} -> {step.verdict}")
        if step.name == "mu_candidates":
            for k, lam, mu, beta in step.evidence["branches"]:
                print(f"{indent}      branch (k, lambda, mu) = ({k}, {lam}, {mu}), beta = {beta}")
        if step.name == "parity_obstruction":
            print(f"{indent}      every admissible orbit-count vector has an odd entry")
    print()
    print(f"verdict: {cert.verdict} ({len(cert.steps)} steps)")

    mismatches = replay_certificate(certificate_to_json(cert))
    print(f"replay: {'all steps recompute byte-identically' if not mismatches else mismatches}")


if __name__ == "__main__":
    main()
