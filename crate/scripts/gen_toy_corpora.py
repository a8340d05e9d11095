"""Writes the two 20-document toy corpora used by the end-to-end tests.

Run from the repository root: python3 scripts/gen_toy_corpora.py
"""
import csv
import random

OUT = "crates/core/tests/fixtures"

TOPICS = {
    "a": [
        ["leadership", "team", "performance", "identity", "behavior"],
        ["strategy", "firm", "governance", "board", "acquisition"],
    ],
    "b": [
        ["public", "policy", "education", "rural", "health"],
        ["tourism", "business", "region", "market", "export"],
    ],
}
BRIDGE = {"a": "innovation", "b": "development"}
FILLER = ["the", "of", "in", "and", "a", "for", "on"]
SENTENCE_WORDS = {
    "a": "we examine how organizational members interpret ambiguous signals across multilevel settings "
    "and theorize consequences for collective sensemaking processes in established corporations".split(),
    "b": "this article analyzes the situation of local companies in the region and describes the main "
    "results of a survey applied to owners and workers".split(),
}


def title(rng, key, i):
    topic = TOPICS[key][i % 2]
    words = rng.sample(topic, 3)
    if i % 5 == 0:
        words.append(BRIDGE[key])
    words.insert(1, rng.choice(FILLER))
    t = " ".join(words).capitalize()
    if i == 7:
        t += ": evidence, theory"
    return t


def abstract(rng, key, i):
    if key == "b" and i in (4, 13):
        return ""
    pool = SENTENCE_WORDS[key]
    sentences = []
    for _ in range(rng.randint(2, 5)):
        n = rng.randint(8, 24) if key == "a" else rng.randint(6, 14)
        s = " ".join(rng.choice(pool) for _ in range(n))
        sentences.append(s.capitalize() + ".")
    return " ".join(sentences)


def main():
    rng = random.Random(20211)
    for key, venue in (("a", "Toy Journal A"), ("b", "Toy Journal B")):
        with open(f"{OUT}/toy_{key}.csv", "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["EID", "Title", "Abstract", "Year", "Source title", "Cited by", "Author count"])
            for i in range(20):
                w.writerow([
                    f"2-s2.0-{key}{i:04d}",
                    title(rng, key, i),
                    abstract(rng, key, i),
                    2010 + i % 8,
                    venue,
                    rng.randint(0, 300) if key == "a" else rng.randint(0, 12),
                    rng.randint(1, 5),
                ])


if __name__ == "__main__":
    main()
