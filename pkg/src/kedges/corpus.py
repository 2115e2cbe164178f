"""The bundled corpus: a fixed, reproducible set of drawings.

Nothing is stored in the repository; :func:`corpus_specs` regenerates the
same drawings (and therefore the same file bytes) on every call.
"""

from __future__ import annotations

from pathlib import Path

from .constructors import gen_convex, gen_cylindrical, gen_random, gen_twopage, search_twopage_optimal
from .drawing import DrawingSpec
from .io import write_drawing

CONVEX_RANGE = range(5, 12)
CYLINDRICAL_RANGE = range(5, 12)
TWOPAGE_RANGE = range(5, 11)
RANDOM_N = range(5, 12)
RANDOM_COUNT = 500


def random_jobs(count: int = RANDOM_COUNT, seed_base: int = 0) -> list[tuple[int, int]]:
    """(n, seed) pairs cycling through n = 5..11."""
    ns = list(RANDOM_N)
    return [(ns[i % len(ns)], seed_base + i) for i in range(count)]


def corpus_specs(random_count: int = RANDOM_COUNT, seed_base: int = 0):
    """Yield ``(file name, spec)`` for the whole corpus in a fixed order."""
    for n in CONVEX_RANGE:
        yield f"convex-n{n:02d}.json", gen_convex(n)
    for n in CYLINDRICAL_RANGE:
        yield f"cylindrical-n{n:02d}.json", gen_cylindrical(n)
    for n in TWOPAGE_RANGE:
        yield f"twopage-n{n:02d}.json", gen_twopage(n, search_twopage_optimal(n))
    for n, seed in random_jobs(random_count, seed_base):
        yield f"random-n{n:02d}-s{seed:05d}.json", gen_random(n, seed)


def write_corpus(outdir, random_count: int = RANDOM_COUNT, seed_base: int = 0) -> list[Path]:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, spec in corpus_specs(random_count, seed_base):
        path = out / name
        write_drawing(spec, path)
        paths.append(path)
    return paths


def family(name: str) -> str:
    return name.split("-", 1)[0]


def load_specs(random_count: int = RANDOM_COUNT) -> list[tuple[str, DrawingSpec]]:
    return list(corpus_specs(random_count))
