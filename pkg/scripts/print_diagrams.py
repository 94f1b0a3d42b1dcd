"""Print Loewy diagrams of the projective indecomposables (ASCII, or DOT with --dot)."""
import sys

from stmodkit.algebra import build_case_a, build_case_b
from stmodkit.diagram import loewy_diagram, to_ascii, to_dot
from stmodkit.module import free_module


def main():
    dot = "--dot" in sys.argv
    for a in (build_case_a(1), build_case_b()):
        for lam in a.eigenvalues:
            p = free_module(a, [lam])
            d = loewy_diagram(p)
            print(f"# {a}: {p.label}  rows {d.row_sizes()}")
            print(to_dot(d, a.field.symbol) if dot else to_ascii(d))


if __name__ == "__main__":
    main()
