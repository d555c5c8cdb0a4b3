"""Compare the compiled token-scan kernel against the pure-Python one.

Run:  python3 benchmarks/bench_tokenize.py [--chars 2000000]

Both kernels are checked for identical output on the benchmark text
before timing, so the numbers always refer to the same behavior.
"""

import argparse
import random
import time

from docelem._kernels import KERNEL, pure

try:
    from docelem._kernels import _scan as compiled
except ImportError:
    compiled = None

_CJK = "租赁期限自年月日起至止合同有效年度金共计为元人民币甲方乙出质人股份质押公告"
_ASCII = "0123456789abcdefghijklmnopqrstuvwxyz.,%()"


def build_text(chars: int, seed: int = 7) -> str:
    rng = random.Random(seed)
    out = []
    total = 0
    while total < chars:
        if rng.random() < 0.7:
            part = "".join(rng.choice(_CJK) for _ in range(rng.randint(4, 30)))
        else:
            part = "".join(rng.choice(_ASCII) for _ in range(rng.randint(2, 12)))
        if rng.random() < 0.2:
            part += " "
        out.append(part)
        total += len(part)
    return "".join(out)


def bench(fn, text: str, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(text)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--chars", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    text = build_text(args.chars)
    print(f"text: {len(text):,} chars; active kernel: {KERNEL}")

    if compiled is None:
        print("compiled kernel not built; timing pure only")
        t = bench(pure.scan_tokens, text, args.repeats)
        print(f"pure     : {t:.3f}s  ({len(text) / t / 1e6:.1f} Mchar/s)")
        return

    if compiled.scan_tokens(text) != pure.scan_tokens(text):
        raise SystemExit("kernel outputs differ; refusing to time")

    t_pure = bench(pure.scan_tokens, text, args.repeats)
    t_comp = bench(compiled.scan_tokens, text, args.repeats)
    print(f"pure     : {t_pure:.3f}s  ({len(text) / t_pure / 1e6:.1f} Mchar/s)")
    print(f"compiled : {t_comp:.3f}s  ({len(text) / t_comp / 1e6:.1f} Mchar/s)")
    print(f"speedup  : {t_pure / t_comp:.1f}x")


if __name__ == "__main__":
    main()
