"""Regenerate crates/core/tests/fixtures/syllables_200.tsv from the CMU Pronouncing Dictionary.

Usage: python3 scripts/gen_syllable_fixture.py SEED_TEXT

Words are pinned common words plus a seeded sample of the distinct lowercase
words of SEED_TEXT that the dictionary knows. Syllable counts are the number
of stressed vowel phonemes in the first CMU pronunciation.
"""
import pathlib
import random
import re
import sys

import cmudict

ROOT = pathlib.Path(__file__).resolve().parent.parent
OUT = ROOT / "crates/core/tests/fixtures/syllables_200.tsv"
PINNED = ["cat", "table", "like", "management", "simple", "make", "little", "people",
          "cake", "idea", "business", "research", "readability", "diversity", "journal"]


def main():
    d = cmudict.dict()
    text = pathlib.Path(sys.argv[1]).read_text(encoding="utf-8")
    vocab = sorted({w for w in re.findall(r"[a-z]+", text.lower()) if 2 <= len(w) <= 14 and w in d})
    rng = random.Random(1944)
    picked = [w for w in PINNED]
    for w in rng.sample(vocab, len(vocab)):
        if len(picked) == 200:
            break
        if w not in picked:
            picked.append(w)
    lines = ["# word\tsyllables (CMU dict, first pronunciation)"]
    for w in picked:
        n = sum(1 for ph in d[w][0] if ph[-1].isdigit())
        lines.append(f"{w}\t{n}")
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
