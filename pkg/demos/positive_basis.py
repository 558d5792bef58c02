"""Rewrite positive elements of Z + Z*sqrt(2) over a basis chosen so that
every coordinate comes out non-negative, with a unimodular change of basis.

Run:  python3 demos/positive_basis.py
"""

from valuedfields.groups import QuadGroup, parse_elem, perron_basis


def main():
    group = QuadGroup()
    gen = (parse_elem(group, "1"), parse_elem(group, "sqrt2"))
    for texts in (("1", "sqrt2-1"), ("3-2*sqrt2", "2*sqrt2-2")):
        targets = tuple(parse_elem(group, t) for t in texts)
        result = perron_basis(gen, targets)
        print("targets:", ", ".join(str(t) for t in targets))
        print("  basis:", ", ".join(str(b) for b in result.basis))
        for t, row in zip(targets, result.coeffs):
            combo = " + ".join(f"{n}*({b})" for n, b in zip(row, result.basis) if n)
            print(f"  {t} = {combo}")
        print("  change of basis:", list(map(list, result.change_of_basis)))
        print()


if __name__ == "__main__":
    main()
