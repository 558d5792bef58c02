"""Exact arithmetic for valued fields: ordered value groups, finite and
rational coefficient fields, truncated generalized power series, certified
Hensel/Newton lifting, Artin-Schreier analysis, places of rational function
fields, and a gallery of end-to-end worked computations.

Everything is exact: rationals, finite-field elements, and group elements;
no floating point anywhere.  Truncations carry explicit precision bounds and
every reported identity is certified below its bound.
"""

__version__ = "1.0.0"
