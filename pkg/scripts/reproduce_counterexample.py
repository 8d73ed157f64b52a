"""Walk through the two-qubit counterexample for a range of |a|.

For each a (b real, |a|^2 + |b|^2 = 1) prints: the 2x2 solver verdict, whether
a one-sided witness exists, the best one-sided overlap 2|a||b|, and the
residuals of the two operator orderings in the filter/unitary chain.

    python scripts/reproduce_counterexample.py --steps 9
"""
import argparse
import math

from luequiv import equivalence as eq


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=9)
    parser.add_argument("--tol", type=float, default=1e-8)
    args = parser.parse_args()

    print(f"{'|a|^2':>7} {'solver':>13} {'witness':>8} {'max ovl':>9} {'2|a||b|':>9} {'composed':>10} {'swapped':>10}")
    for k in range(1, args.steps + 1):
        pa = k / (args.steps + 1)
        params = eq.CounterexampleParams(math.sqrt(pa), math.sqrt(1 - pa))
        psi1, psi2 = params.states()
        solved = eq.solve_one_sided_2x2(params, tol=1e-9)
        verdict = "solvable" if solved else (
            f"{solved.required_modulus_first:.3f}!={solved.required_modulus_second:.3f}")
        wit = eq.one_sided_witness(psi1, psi2, "A", args.tol)
        value, _ = eq.max_overlap_one_sided(psi1, psi2, "A")
        chain = eq.relation_chain_check(psi1, psi2, args.tol)
        print(f"{pa:7.3f} {verdict:>13} {('yes' if wit else 'no'):>8} {value:9.6f} "
              f"{2 * math.sqrt(pa * (1 - pa)):9.6f} {chain.composed_residual:10.2e} {chain.swapped_residual:10.2e}")


if __name__ == "__main__":
    main()
