"""Batch and debugging command line: grade, batch, stem, distance, serve, regrade.

All file input is read as UTF-8 with an optional BOM; output is always
UTF-8 without a BOM. Exit codes: 0 success, 1 one or more records failed,
2 usage or configuration error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from .scoring import EmptyModelAnswerError, GradingPolicy, grade as grade_answer
from .similarity import edit_distance, similarity
from .stemming import ConfigError, StemMode, StemmerConfig, stem_stages
from .store import ExamStore, StoreError


def _read_text(path: str) -> str:
    if path == "-":
        data = sys.stdin.buffer.read()
        return data.decode("utf-8-sig")
    return Path(path).read_text(encoding="utf-8-sig")


def _load_grading_setup(config_path: str | None) -> tuple[StemmerConfig, GradingPolicy]:
    """Config file: JSON with optional "stemmer" and "policy" sections."""
    if config_path is None:
        return StemmerConfig(), GradingPolicy()
    try:
        doc = json.loads(Path(config_path).read_text(encoding="utf-8-sig"))
        return (
            StemmerConfig.from_doc(doc.get("stemmer", {})),
            GradingPolicy.from_doc(doc.get("policy", {})),
        )
    except (OSError, json.JSONDecodeError, ConfigError) as exc:
        raise click.UsageError(f"bad config file {config_path}: {exc}")


def _print_json(doc: dict, compact: bool = False) -> None:
    if compact:
        text = json.dumps(doc, ensure_ascii=False)
    else:
        text = json.dumps(doc, ensure_ascii=False, indent=2)
    click.echo(text)


@click.group()
def main():
    """Score Arabic free-text answers against model answers."""


@main.command()
@click.option("--student", required=True, help="Student answer file, or - for stdin.")
@click.option("--model", required=True, help="Model answer file.")
@click.option("--mode", type=click.Choice(["light", "heavy"]), default="heavy", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def grade(student, model, mode, config_path):
    """Grade one student answer against one model answer."""
    config, policy = _load_grading_setup(config_path)
    try:
        result = grade_answer(
            _read_text(student), _read_text(model), StemMode(mode), config, policy
        )
    except EmptyModelAnswerError as exc:
        raise click.UsageError(str(exc))
    _print_json(result.to_doc())


def _iter_batch_records(path: str):
    """Yield (line_number, id, student_answer, model_answer | error)."""
    text = _read_text(path)
    first = next((ln for ln in text.splitlines() if ln.strip()), "")
    as_jsonl = path.endswith((".jsonl", ".ndjson")) or (
        not path.endswith(".csv") and first.lstrip().startswith("{")
    )
    if as_jsonl:
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                doc = json.loads(line)
                yield number, doc["id"], doc["student_answer"], doc["model_answer"], None
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                yield number, None, None, None, f"bad json-lines record: {exc}"
    else:
        rows = csv.reader(io.StringIO(text))
        for number, row in enumerate(rows, start=1):
            if not row or not any(cell.strip() for cell in row):
                continue
            if number == 1 and [c.strip().lower() for c in row[:3]] == ["id", "student_answer", "model_answer"]:
                continue
            if len(row) < 3:
                yield number, None, None, None, f"expected 3 columns, got {len(row)}"
                continue
            yield number, row[0], row[1], row[2], None


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(["light", "heavy"]), default="heavy", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def batch(input_path, mode, config_path):
    """Grade a CSV or JSON-lines file of (id, student_answer, model_answer)."""
    config, policy = _load_grading_setup(config_path)
    failed = 0
    for number, record_id, student, model, problem in _iter_batch_records(input_path):
        if problem is not None:
            failed += 1
            click.echo(f"line {number}: {problem}", err=True)
            continue
        try:
            result = grade_answer(student, model, StemMode(mode), config, policy)
        except EmptyModelAnswerError as exc:
            failed += 1
            click.echo(f"line {number} (id {record_id}): {exc}", err=True)
            continue
        doc = {"id": record_id}
        doc.update(result.to_doc())
        _print_json(doc, compact=True)
    if failed:
        sys.exit(1)


@main.command()
@click.option("--word", required=True)
@click.option("--mode", type=click.Choice(["light", "heavy"]), default="heavy", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None)
def stem(word, mode, config_path):
    """Show every stemming stage for one word; the last line is the stem."""
    config, _ = _load_grading_setup(config_path)
    stages = stem_stages(word, StemMode(mode), config)
    for stage, value in stages:
        click.echo(f"{stage}: {value}")
    click.echo(stages[-1][1])


@main.command()
@click.argument("s1")
@click.argument("s2")
def distance(s1, s2):
    """Print edit distance D and similarity S for a pair of strings."""
    d = edit_distance(s1, s2)
    s = similarity(s1, s2)
    click.echo(f"D={d} S={s:g}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
def serve(config_path):
    """Run the HTTP exam service."""
    from .service import ServiceConfig, ServiceConfigError, run

    try:
        config = ServiceConfig.load(config_path)
        config.validate()
    except (ServiceConfigError, ValueError) as exc:
        raise click.UsageError(str(exc))
    run(config)


@main.command()
@click.option("--exam", "exam_id", required=True)
@click.option("--store", "store_path", required=True, type=click.Path(file_okay=False))
def regrade(exam_id, store_path):
    """Re-run grading for an exam's submissions under its current policy."""
    store = ExamStore(store_path)
    try:
        exam = store.load_exam(exam_id)
        submissions = store.submissions_for_exam(exam_id)
        for submission in submissions:
            result = grade_answer(
                submission.answer_text,
                exam.question(submission.question_id).model_answer,
                exam.mode,
                exam.config,
                exam.policy,
            )
            store.update_grade(submission.submission_id, result)
    except StoreError as exc:
        raise click.UsageError(str(exc))
    click.echo(f"regraded {len(submissions)} submission(s) for exam {exam_id}")


if __name__ == "__main__":
    main()
