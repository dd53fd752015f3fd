"""Write the first N ordinates of nontrivial Riemann zeta zeros, one per line.

Usage: python3 tools/gen_riemann_zeros.py 1200 > data/riemann_zeros.txt
"""
import sys

import mpmath


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 1200
    mpmath.mp.dps = 30
    print(f"# first {count} ordinates gamma_k of zeta(1/2 + i gamma_k) = 0, mpmath.zetazero, 25 digits")
    for n in range(1, count + 1):
        print(mpmath.nstr(mpmath.zetazero(n).imag, 25, strip_zeros=False))
        sys.stdout.flush()


if __name__ == "__main__":
    main()
