import csv
import gzip

import pytest

from hyperdir.cli import main
from hyperdir.ingest import PosConfig, parse_vertical, count_cooccurrences
from hyperdir.space import load_space_file

CORPUS = """<s>
the\tDT\tthe
cod\tNN\tcod
lives\tVVZ\tlive
in\tIN\tin
water\tNN\twater
</s>
<s>
fish\tNN\tfish
like\tVV\tlike
water\tNN\twater
</s>
<s>
the\tDT\tthe
cod\tNN\tcod
is\tVBZ\tbe
a\tDT\ta
fish\tNN\tfish
</s>
"""


@pytest.fixture
def corpus_file(tmp_path):
    path = tmp_path / "toy.vrt"
    path.write_text(CORPUS, encoding="utf-8")
    return path


def build_reference_space():
    return count_cooccurrences(parse_vertical(CORPUS.encode()), PosConfig.penn())


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.reader(f))


def test_build_space_round_trip(corpus_file, tmp_path, capsys):
    cache = tmp_path / "space.hdsp"
    assert main(["build-space", str(corpus_file), "--space", str(cache)]) == 0
    out = capsys.readouterr().out
    assert "sentences=3" in out and "vocab=" in out
    assert load_space_file(cache) == build_reference_space()


def test_build_space_missing_corpus_exits_2(tmp_path, capsys):
    rc = main(["build-space", str(tmp_path / "nope.vrt"),
               "--space", str(tmp_path / "s.hdsp")])
    assert rc == 2
    assert "no such corpus file" in capsys.readouterr().err


def test_build_space_no_argument_exits_2(tmp_path, capsys):
    rc = main(["build-space", "--space", str(tmp_path / "s.hdsp")])
    assert rc == 2


def test_build_space_two_files_equal_concatenation(tmp_path):
    half = CORPUS.split("</s>\n", 1)
    (tmp_path / "a.vrt").write_text(half[0] + "</s>\n", encoding="utf-8")
    (tmp_path / "b.vrt").write_text(half[1], encoding="utf-8")
    cache_two = tmp_path / "two.hdsp"
    assert main(["build-space", str(tmp_path / "a.vrt"), str(tmp_path / "b.vrt"),
                 "--space", str(cache_two)]) == 0
    assert load_space_file(cache_two) == build_reference_space()


def test_build_space_gzip_sniffing(tmp_path):
    path = tmp_path / "toy.vrt.gz"
    path.write_bytes(gzip.compress(CORPUS.encode("utf-8")))
    cache = tmp_path / "gz.hdsp"
    assert main(["build-space", str(path), "--space", str(cache)]) == 0
    assert load_space_file(cache) == build_reference_space()


def test_build_space_threads_do_not_change_cache(corpus_file, tmp_path):
    one = tmp_path / "one.hdsp"
    many = tmp_path / "many.hdsp"
    assert main(["build-space", str(corpus_file), "--space", str(one)]) == 0
    assert main(["build-space", str(corpus_file), "--space", str(many),
                 "--threads", "4"]) == 0
    assert one.read_bytes() == many.read_bytes()


def test_build_space_config_file(corpus_file, tmp_path):
    config = tmp_path / "run.ini"
    config.write_text(
        f"[corpus]\npaths = {corpus_file}\nwindow = 2\ntagset = penn\n"
        f"[output]\nspace = {tmp_path / 'cfg.hdsp'}\n", encoding="utf-8")
    assert main(["build-space", "--config", str(config)]) == 0
    expected = count_cooccurrences(parse_vertical(CORPUS.encode()),
                                   PosConfig.penn(), window=2)
    assert load_space_file(tmp_path / "cfg.hdsp") == expected


@pytest.fixture
def evaluated(corpus_file, tmp_path):
    cache = tmp_path / "space.hdsp"
    main(["build-space", str(corpus_file), "--space", str(cache)])
    gold = tmp_path / "gold.tsv"
    gold.write_text("cod\tfish\thyper\nwater\tfish\thyper\n", encoding="utf-8")
    out = tmp_path / "out"
    rc = main(["evaluate", "--space", str(cache), "--gold", str(gold),
               "--out", str(out)])
    return rc, out, cache, gold


def test_evaluate_writes_all_csvs(evaluated):
    rc, out, _, _ = evaluated
    assert rc == 0
    for subset in ("compound", "noncompound"):
        for kind in ("decisions", "accuracy", "smc", "buckets", "complementarity"):
            assert (out / f"gold_{subset}_{kind}.csv").is_file()


def test_evaluate_prints_coverage(corpus_file, tmp_path, capsys):
    cache = tmp_path / "space.hdsp"
    main(["build-space", str(corpus_file), "--space", str(cache)])
    gold = tmp_path / "gold.tsv"
    gold.write_text("whale\tmammal\thyper\n", encoding="utf-8")
    out = tmp_path / "out"
    rc = main(["evaluate", "--space", str(cache), "--gold", str(gold),
               "--out", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "coverage[gold/noncompound]: total=1 kept=0 dropped_oov=1" in printed
    decisions = read_csv(out / "gold_noncompound_decisions.csv")
    assert len(decisions) == 1  # header only
    smc = read_csv(out / "gold_noncompound_smc.csv")
    assert len(smc) == 1


def test_evaluate_single_method(corpus_file, tmp_path):
    cache = tmp_path / "space.hdsp"
    main(["build-space", str(corpus_file), "--space", str(cache)])
    gold = tmp_path / "gold.tsv"
    gold.write_text("cod\tfish\thyper\n", encoding="utf-8")
    out = tmp_path / "out"
    rc = main(["evaluate", "--space", str(cache), "--gold", str(gold),
               "--out", str(out), "--methods", "WordFrequency"])
    assert rc == 0
    accuracy_rows = read_csv(out / "gold_noncompound_accuracy.csv")
    assert len(accuracy_rows) == 2
    assert accuracy_rows[1][0] == "WordFrequency"


def test_evaluate_unknown_method_exits_2(corpus_file, tmp_path, capsys):
    cache = tmp_path / "space.hdsp"
    main(["build-space", str(corpus_file), "--space", str(cache)])
    rc = main(["evaluate", "--space", str(cache), "--gold", str(corpus_file),
               "--out", str(tmp_path), "--methods", "Cosine"])
    assert rc == 2
    assert "unknown method" in capsys.readouterr().err


def test_evaluate_missing_space_exits_2(tmp_path, capsys):
    rc = main(["evaluate", "--space", str(tmp_path / "none.hdsp"),
               "--gold", str(tmp_path / "g.tsv"), "--out", str(tmp_path)])
    assert rc == 2
    assert "load-space" in capsys.readouterr().err


def test_evaluate_corrupt_space_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.hdsp"
    bad.write_bytes(b"not a space cache at all")
    rc = main(["evaluate", "--space", str(bad), "--gold", str(tmp_path / "g.tsv"),
               "--out", str(tmp_path)])
    assert rc == 1
    assert "load-space" in capsys.readouterr().err


def test_smc_rederives_identical_csv(evaluated, tmp_path):
    _, out, _, _ = evaluated
    rederived = tmp_path / "smc2.csv"
    rc = main(["smc", str(out / "gold_noncompound_decisions.csv"),
               "--out", str(rederived)])
    assert rc == 0
    assert rederived.read_bytes() == (out / "gold_noncompound_smc.csv").read_bytes()


def test_buckets_rederives_identical_csv(evaluated, tmp_path):
    _, out, _, _ = evaluated
    rederived = tmp_path / "buckets2.csv"
    rc = main(["buckets", str(out / "gold_noncompound_decisions.csv"),
               "--out", str(rederived), "--buckets", "10"])
    assert rc == 0
    assert rederived.read_bytes() == (out / "gold_noncompound_buckets.csv").read_bytes()


def test_complement_rederives_identical_csv(evaluated, tmp_path):
    _, out, _, _ = evaluated
    rederived = tmp_path / "comp2.csv"
    rc = main(["complement", str(out / "gold_noncompound_decisions.csv"),
               "--out", str(rederived)])
    assert rc == 0
    assert rederived.read_bytes() == (
        out / "gold_noncompound_complementarity.csv").read_bytes()


def test_smc_missing_decisions_exits_2(tmp_path, capsys):
    rc = main(["smc", str(tmp_path / "none.csv"), "--out", str(tmp_path / "o.csv")])
    assert rc == 2
    assert "load-decisions" in capsys.readouterr().err
