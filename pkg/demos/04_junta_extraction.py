"""The junta extraction pipeline, one instance per case.

Given a halfspace and a target (eps, delta), the pipeline routes through one
of five outcomes: a small-delta shortcut, an immediate constant, a certified
projection onto a few head coordinates, a premise violation witnessed by
unbiased restrictions, or a head junta when the weights never become regular.
Each report carries the measured distance and the bound it must satisfy.
"""

import numpy as np

from hsf import canonicalize, extract_junta, junta_budget, theorem_verify


def run(name, weights, theta, eps, delta):
    report = extract_junta(canonicalize(weights, theta), eps, delta)
    verdict = theorem_verify(report)
    d = report.diagnostics
    members = [j + 1 for j in range(64) if (report.junta_set >> j) & 1]
    print(f"{name}  (eps={eps}, delta={delta})")
    print(f"  case          : {report.case.value}")
    print(f"  critical index: {d.critical_idx}, budget L = {d.budget}")
    print(f"  junta coords  : {members or 'none (constant)'}")
    print(f"  ns / premise  : {d.ns_value:.4f} vs {d.premise_bound:.4f} "
          f"(premise {'holds' if d.premise_holds else 'violated'})")
    print(f"  distance      : {report.distance:.4f}"
          + ("" if np.isnan(d.guarantee_bound) else f" <= {d.guarantee_bound:.4f}"))
    print(f"  verdict       : {verdict.label}")
    print()


def main():
    print(f"budget at (0.1, 0.1): {junta_budget(0.1, 0.1)} coordinates allowed\n")

    # Tiny delta trips the shortcut: the guarantee is vacuous there.
    run("small-delta shortcut", np.ones(15), 0.0, eps=0.1, delta=0.05)

    # A threshold far from center is already nearly constant.
    run("near-constant", np.ones(16), 8.0, eps=0.25, delta=0.62)

    # One dominant weight, regular tail: project onto the head.
    run("certified projection", np.concatenate(([2.0], np.ones(17))), 0.0,
        eps=0.25, delta=0.95)

    # Unbiased restrictions force noise sensitivity up: premise violated.
    run("premise violation", np.concatenate(([1.6, 1.03], np.ones(17))), 0.0,
        eps=0.25, delta=0.62)

    # Steep decay never becomes regular: take the budgeted head outright.
    run("head junta", 0.6 ** np.arange(1, 19), 0.0, eps=0.25, delta=0.95)


if __name__ == "__main__":
    main()
