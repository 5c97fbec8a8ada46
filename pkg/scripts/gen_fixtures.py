#!/usr/bin/env python3
"""Generate the committed toy corpus, gold pairs, and expected CSVs.

Expected outputs are computed exclusively with the brute-force reference
code in tests/oracles.py, never with the production package, so the
acceptance suite's byte comparison is a genuine two-route check.

Running this script rewrites tests/fixtures/; it is committed for
provenance and reproducibility (fixed seed).
"""

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

SEED = 20250809
WINDOW = 10
K = 50
N_BUCKETS = 10
N_TOPICS = 20
HYPONYMS_PER_TOPIC = 3
N_COMPOUND_TOPICS = 10

CONSONANTS = "bcdfgklmnprstvz"
VOWELS = "aeiou"
FUNCTION_WORDS = [("the", "DT"), ("a", "DT"), ("of", "IN"), ("in", "IN"),
                  ("with", "IN"), ("and", "CC"), ("it", "PRP"), ("very", "RB")]

FIXTURES = ROOT / "tests" / "fixtures"


def make_word(rng, syllables):
    return "".join(rng.choice(CONSONANTS) + rng.choice(VOWELS)
                   for _ in range(syllables))


def new_word(rng, pool, min_syl=2, max_syl=4):
    """A fresh word that is not a substring of (or superstring to) any other."""
    for _ in range(10000):
        word = make_word(rng, rng.randint(min_syl, max_syl))
        if all(word not in other and other not in word for other in pool):
            pool.add(word)
            return word
    raise RuntimeError("word pool exhausted")


def build_vocabulary(rng):
    pool = set()
    topics = []
    for t in range(N_TOPICS):
        hypernym = new_word(rng, pool)
        hyponyms = [new_word(rng, pool) for _ in range(HYPONYMS_PER_TOPIC)]
        if t < N_COMPOUND_TOPICS:
            # replace the last hyponym with a compound built on the hypernym
            modifier = make_word(rng, rng.randint(1, 2))
            hyponyms[-1] = modifier + hypernym
        nouns = [new_word(rng, pool) for _ in range(4)]
        verbs = [new_word(rng, pool) for _ in range(2)]
        adjs = [new_word(rng, pool) for _ in range(2)]
        topics.append({"hypernym": hypernym, "hyponyms": hyponyms,
                       "nouns": nouns, "verbs": verbs, "adjs": adjs})
    fillers = {
        "nouns": [new_word(rng, pool) for _ in range(30)],
        "verbs": [new_word(rng, pool) for _ in range(10)],
        "adjs": [new_word(rng, pool) for _ in range(10)],
    }
    return topics, fillers


def build_sentences(rng, topics, fillers):
    """Token lists of (surface, pos, lemma); hypernyms dominate their topics."""
    sentences = []
    all_hypernyms = [t["hypernym"] for t in topics]
    for t, topic in enumerate(topics):
        n_sentences = rng.randint(180, 300)
        # a few topics host a hyponym that out-frequents its hypernym
        inverted = t in (4, 11, 17)
        for _ in range(n_sentences):
            content = []
            p_hyper = 0.55 if inverted else 0.92
            if rng.random() < p_hyper:
                content.append((topic["hypernym"], "NN"))
            if inverted:
                if rng.random() < 0.95:
                    content.append((topic["hyponyms"][0], "NN"))
                if rng.random() < 0.3:
                    content.append((rng.choice(topic["hyponyms"][1:]), "NN"))
            elif rng.random() < 0.38:
                content.append((rng.choice(topic["hyponyms"]), "NN"))
            for noun in rng.sample(topic["nouns"], rng.randint(1, 3)):
                content.append((noun, "NN"))
            content.append((rng.choice(topic["verbs"]), rng.choice(["VV", "VVZ"])))
            if rng.random() < 0.6:
                content.append((rng.choice(topic["adjs"]), "JJ"))
            if rng.random() < 0.5:
                content.append((rng.choice(fillers["nouns"]), "NN"))
            if rng.random() < 0.25:
                content.append((rng.choice(fillers["verbs"]), "VV"))
            if rng.random() < 0.25:
                content.append((rng.choice(fillers["adjs"]), "JJ"))
            if rng.random() < 0.15:
                content.append((rng.choice(all_hypernyms), "NN"))
            tokens = list(content)
            for _ in range(rng.randint(2, 5)):
                tokens.append(rng.choice(FUNCTION_WORDS))
            rng.shuffle(tokens)
            sentences.append([(lemma, pos, lemma) for lemma, pos in tokens])
    rng.shuffle(sentences)
    return sentences


def gold_rows(topics):
    """The 60 real pairs plus rows destined for the cleaning stage."""
    rows = []
    for topic in topics:
        for hyponym in topic["hyponyms"]:
            rows.append(f"{hyponym}\t{topic['hypernym']}\thyper")
    first = rows[0]
    rows.insert(5, first)                                 # duplicate
    rows.insert(9, "selfsame\tselfsame\thyper")           # autohyponym
    rows.insert(14, "sea bass\tfish\thyper")              # multiword
    rows.insert(20, f"{topics[0]['nouns'][0]}\t{topics[1]['nouns'][0]}\tmero")
    rows.insert(26, "shortrow")                           # single column
    return rows


def clean(pairs):
    seen = set()
    out = []
    for hypo, hyper in pairs:
        if (hypo, hyper) in seen or hypo == hyper or " " in hypo or " " in hyper:
            continue
        seen.add((hypo, hyper))
        out.append((hypo, hyper))
    return out


def write_corpus(path, sentences):
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write('<text id="toy">\n')
        for sentence in sentences:
            f.write("<s>\n")
            for surface, pos, lemma in sentence:
                f.write(f"{surface}\t{pos}\t{lemma}\n")
            f.write("</s>\n")
        f.write("</text>\n")


def decisions_for(pairs, lemmas, mat, freqs, wmat, source, compound):
    rows = []
    freq_of = dict(zip(lemmas, freqs))
    for hypo, hyper in pairs:
        decisions = {m: oracles.o_decide(m, hypo, hyper, lemmas, mat, freqs, wmat, K)
                     for m in oracles.METHOD_ORDER}
        rows.append((hypo, hyper, source, compound,
                     freq_of[hypo], freq_of[hyper], decisions))
    return rows


def analysis_files(out_dir, stem, rows):
    methods = oracles.METHOD_ORDER
    oracles.write_decisions_csv(out_dir / f"{stem}_decisions.csv", methods, rows)

    columns = {m: [r[6][m] for r in rows] for m in methods}
    acc = [(m,) + oracles.o_accuracy(columns[m]) for m in methods]
    oracles.write_accuracy_csv(out_dir / f"{stem}_accuracy.csv", acc)

    matrix = [[oracles.o_smc(columns[a], columns[b]) for b in methods]
              for a in methods]
    oracles.write_smc_csv(out_dir / f"{stem}_smc.csv", methods, matrix)

    bucket_input = [(r[0], r[1], r[4], r[5]) for r in rows]
    buckets = oracles.o_buckets(bucket_input, N_BUCKETS)
    bucket_rows = []
    for i, bucket in enumerate(buckets, 1):
        for m in methods:
            decisions = [columns[m][j] for j in bucket]
            bucket_rows.append((i, m) + oracles.o_accuracy(decisions))
    oracles.write_buckets_csv(out_dir / f"{stem}_buckets.csv", bucket_rows)

    comp = [(a, b, oracles.o_complementarity(columns[a], columns[b]))
            for a in methods for b in methods if a != b]
    oracles.write_complementarity_csv(out_dir / f"{stem}_complementarity.csv", comp)
    return matrix


def main():
    rng = random.Random(SEED)
    topics, fillers = build_vocabulary(rng)
    sentences = build_sentences(rng, topics, fillers)

    FIXTURES.mkdir(parents=True, exist_ok=True)
    expected = FIXTURES / "expected"
    expected.mkdir(exist_ok=True)

    write_corpus(FIXTURES / "toy_corpus.vrt", sentences)
    raw_rows = gold_rows(topics)
    (FIXTURES / "toy_gold.tsv").write_text("\n".join(raw_rows) + "\n",
                                           encoding="utf-8")

    cells, freq, _ = oracles.brute_force_counts(sentences, {"N"}, {"V"}, {"J"}, WINDOW)
    lemmas, mat, freqs = oracles.counts_to_dense(cells, freq)
    wmat = oracles.o_plmi(mat)

    loaded = []
    for row in raw_rows:
        fields = row.split("\t")
        if len(fields) < 2:
            continue
        if len(fields) >= 3 and fields[2].lower() not in {"hyper", "hypernym", "isa"}:
            continue
        loaded.append((fields[0].strip(), fields[1].strip()))
    pairs = clean(loaded)
    assert len(pairs) == N_TOPICS * HYPONYMS_PER_TOPIC, len(pairs)

    compounds = [(a, b) for a, b in pairs if a.lower() in b.lower() or b.lower() in a.lower()]
    non_compounds = [p for p in pairs if p not in compounds]
    assert len(compounds) == N_COMPOUND_TOPICS, compounds

    freq_of = dict(zip(lemmas, freqs))
    covered = [p for p in pairs if freq_of.get(p[0], 0) > 0 and freq_of.get(p[1], 0) > 0]
    assert len(covered) == len(pairs), "fixture gold must be fully in-corpus"

    hyper_more_frequent = sum(1 for hypo, hyper in pairs
                              if freq_of[hyper] > freq_of[hypo])
    share = hyper_more_frequent / len(pairs)
    assert share >= 0.80, f"hypernym-more-frequent share too low: {share:.2f}"
    assert share < 1.0, "want a few inverted pairs for the bucket analysis"
    print(f"pairs with freq(hypernym) > freq(hyponym): {hyper_more_frequent}/{len(pairs)}")

    matrix = analysis_files(expected, "toy_gold_noncompound",
                            decisions_for(non_compounds, lemmas, mat, freqs, wmat,
                                          "toy_gold", False))
    analysis_files(expected, "toy_gold_compound",
                   decisions_for(compounds, lemmas, mat, freqs, wmat,
                                 "toy_gold", True))

    methods = oracles.METHOD_ORDER
    wf = methods.index("WordFrequency")
    wl = methods.index("WordLength")
    smc_wf_wl = matrix[wf][wl]
    for name in ("WeedsPrec", "InvCL", "SlqsRow"):
        value = matrix[wf][methods.index(name)]
        print(f"SMC(WordFrequency, {name}) = {value:.4f}  vs  "
              f"SMC(WordFrequency, WordLength) = {smc_wf_wl:.4f}")
        assert value > smc_wf_wl, f"frequency-correlation property failed for {name}"

    n_tokens = sum(len(s) for s in sentences)
    print(f"fixture: {len(sentences)} sentences, {n_tokens} tokens, "
          f"{len(lemmas)} lemmas, {len(pairs)} gold pairs "
          f"({len(compounds)} compound)")


if __name__ == "__main__":
    main()
