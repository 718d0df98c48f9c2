"""Write reference tables of non-trivial zeta zeros computed with mpmath.

tests/data/zeros_100.txt      first 100 zeros, indexed layout
tests/data/zeros_spot.txt     "<index> <value>" spot checks at larger heights
"""
import sys
import mpmath as mp

mp.mp.dps = 30


def fmt(v):
    return mp.nstr(v, 17, min_fixed=-1, max_fixed=30)


def main(out_dir):
    with open(f"{out_dir}/zeros_100.txt", "w") as f:
        f.write("# first 100 non-trivial zeros of zeta (imaginary parts), mpmath.zetazero\n")
        for n in range(1, 101):
            f.write(f"{n} {fmt(mp.zetazero(n).imag)}\n")
    with open(f"{out_dir}/zeros_spot.txt", "w") as f:
        f.write("# spot checks: index value (mpmath.zetazero)\n")
        for n in (126, 127, 500, 1000, 2500, 5000, 10000, 50000, 100000, 169165):
            f.write(f"{n} {fmt(mp.zetazero(n).imag)}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
