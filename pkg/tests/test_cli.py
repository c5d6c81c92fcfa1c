import json

import pytest

from coword.cli import EXIT_EMPTY_VOCABULARY, EXIT_STAGE_ERROR, PipelineConfig, main, run_pipeline


@pytest.fixture
def corpus_files(tmp_path):
    titles = tmp_path / "titles.txt"
    titles.write_text(
        "北京大学学报\n清华大学学报\n中华医学杂志\n中华临床医学杂志\n"
        "Chinese Journal of 医学\n北京医学\n",
        encoding="utf-8",
    )
    lexicon = tmp_path / "lex.txt"
    lexicon.write_text("北京\n大学\n学报\n清华\n中华\n医学\n杂志\n临床\n", encoding="utf-8")
    return titles, lexicon


def test_map_defaults(corpus_files, tmp_path, capsys):
    titles, lexicon = corpus_files
    out = tmp_path / "out"
    code = main(["map", str(titles), "-l", str(lexicon), "--min-count", "2", "-k", "2",
                 "--out-dir", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "vocabulary_size: 6" in text  # 北京 大学 学报 中华 医学 杂志
    assert "k: 2" in text
    assert sorted(p.name for p in out.iterdir()) == [
        "factors.csv", "map.clu", "map.net", "map.vec", "scree.csv", "summary.json"]
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["documents"] == 6
    assert summary["threshold"] == summary["mean_nonzero_cosine"]


def test_emit_intermediate(corpus_files, tmp_path):
    titles, lexicon = corpus_files
    out = tmp_path / "out"
    assert main(["map", str(titles), "-l", str(lexicon), "--min-count", "2", "-k", "2",
                 "--out-dir", str(out), "--emit-intermediate", "--name", "cstp"]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"tokens.jsonl", "frequency.csv", "occurrence.csv", "cosine.csv",
            "cstp.net", "cstp.clu", "cstp.vec"} <= names


def test_explicit_threshold(corpus_files, tmp_path):
    titles, lexicon = corpus_files
    summary = run_pipeline(PipelineConfig(titles, lexicon, tmp_path / "o", min_count=2, k=2,
                                          threshold=0.07))
    assert summary["threshold"] == 0.07


def test_empty_vocabulary_exit_code(corpus_files, tmp_path, capsys):
    titles, lexicon = corpus_files
    code = main(["map", str(titles), "-l", str(lexicon), "--min-count", "1000000",
                 "--out-dir", str(tmp_path / "o")])
    assert code == EXIT_EMPTY_VOCABULARY
    assert "vocabulary" in capsys.readouterr().err


def test_missing_input_names_stage(corpus_files, tmp_path, capsys):
    _, lexicon = corpus_files
    code = main(["map", str(tmp_path / "nope.txt"), "-l", str(lexicon),
                 "--out-dir", str(tmp_path / "o")])
    assert code == EXIT_STAGE_ERROR
    assert "stage read" in capsys.readouterr().err


def test_too_many_factors(corpus_files, tmp_path, capsys):
    titles, lexicon = corpus_files
    code = main(["map", str(titles), "-l", str(lexicon), "--min-count", "2", "-k", "50",
                 "--out-dir", str(tmp_path / "o")])
    assert code == EXIT_STAGE_ERROR
    assert "stage factors" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["--threshold", "1.5"], ["--min-count", "0"], ["-k", "0"]])
def test_bad_arguments(corpus_files, tmp_path, args):
    titles, lexicon = corpus_files
    with pytest.raises(SystemExit) as exc:
        main(["map", str(titles), "-l", str(lexicon), "--out-dir", str(tmp_path)] + args)
    assert exc.value.code == 2


def test_drop_degenerate(tmp_path, capsys):
    titles = tmp_path / "t.txt"
    titles.write_text("学报大学\n学报医学\n学报大学医学\n学报\n", encoding="utf-8")
    lexicon = tmp_path / "l.txt"
    lexicon.write_text("学报\n大学\n医学\n", encoding="utf-8")
    base = ["map", str(titles), "-l", str(lexicon), "--min-count", "2", "-k", "1",
            "--out-dir", str(tmp_path / "o")]
    assert main(base) == EXIT_STAGE_ERROR
    assert "学报" in capsys.readouterr().err
    assert main(base + ["--drop-degenerate"]) == 0
    clu = (tmp_path / "o" / "map.clu").read_text(encoding="utf-8").split("\n")
    assert clu[1] == "0"  # 学报 is first in vocabulary order and was dropped


def test_segment_to_stdout(corpus_files, capsys):
    titles, lexicon = corpus_files
    assert main(["segment", str(titles), "-l", str(lexicon)]) == 0
    first = json.loads(capsys.readouterr().out.splitlines()[0])
    assert first["tokens"] == [["北京", "lexicon-word"], ["大学", "lexicon-word"],
                               ["学报", "lexicon-word"]]


def test_pipeline_config_validation(tmp_path):
    with pytest.raises(ValueError):
        PipelineConfig(tmp_path, tmp_path, tmp_path, threshold=2.0)
