"""Run every gallery scenario with default parameters, one verdict per line.

Run:  python3 demos/scenario_tour.py
"""

from valuedfields.gallery import SCENARIO_NAMES, list_scenarios, run_scenario


def main():
    titles = {e["name"]: e["title"] for e in list_scenarios()}
    for name in SCENARIO_NAMES:
        r = run_scenario(name)
        verdict = "PASS" if r.passed else "FAIL"
        print(f"{name}  {titles[name]:<14} {len(r.claims):2d} claims  {verdict}")


if __name__ == "__main__":
    main()
