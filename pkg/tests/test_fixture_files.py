"""The committed fixture files must stay in sync with the in-code matrices."""

from pathlib import Path

from dgscert.fixtures import write_fixture_files

REPO_FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_committed_files_match_generated(tmp_path):
    generated = write_fixture_files(tmp_path)
    for path in generated:
        name = Path(path).name
        committed = REPO_FIXTURES / name
        assert committed.is_file(), f"missing committed fixture {name}"
        assert committed.read_text() == Path(path).read_text(), f"stale committed fixture {name}"
