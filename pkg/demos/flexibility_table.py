"""Exact flexibility numbers of small graphs next to their Hall ratios.

Run: python3 demos/flexibility_table.py
"""

from flexicolor import chi_flex_report, epsilon_of, generate, hall_ratio


def main():
    print(f"{'graph':<12}{'rho':>6}{'chi_l':>7}{'chi_flex':>10}  eps(k) for k = 1..D+1")
    for spec in ("path:2", "path:3", "path:4", "cycle:4", "cycle:5", "complete:3", "complete:4"):
        g = generate(spec)
        rep = chi_flex_report(g)
        eps = [epsilon_of(g, k) for k in range(1, g.max_degree + 2)]
        row = " ".join(str(e) for e in eps)
        print(f"{spec:<12}{str(hall_ratio(g)):>6}{rep.chi_list:>7}{rep.chi_flex:>10}  {row}")


if __name__ == "__main__":
    main()
