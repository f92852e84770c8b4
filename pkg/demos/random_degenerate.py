"""Monte Carlo estimates of the random degenerate-order colouring.

With (d+2)-lists every request is honoured with probability at least
1/2^(d+1); this prints the empirical mean next to that floor.

Run: python3 demos/random_degenerate.py [trials]
"""

import sys

from flexicolor import estimate, generate
from flexicolor.estimate import hoeffding_slack


def main(trials=2000):
    for spec in ("path:10", "grid:3,3", "grid:3,5", "complete:4"):
        g = generate(spec)
        est = estimate("random-degenerate", g, trials=trials, seed=1)
        print(f"{spec:<11} mean {est.mean:.3f} (sd {est.stdev:.3f})  floor {est.floor:.3f}  "
              f"slack {hoeffding_slack(trials):.3f}  improper {est.violations}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2000)
