import random

import pytest
from hypothesis import given, settings, strategies as st

from mindstream.memory import LTMRecord, Pattern, STMEntry
from mindstream.model import Connection, EngineParams, ItemCell, MindMap, new_mindmap
from mindstream.snapshot import (
    EngineState,
    SnapshotError,
    parse_snapshot,
    render_snapshot,
    load_snapshot,
    save_snapshot,
)

from helpers import random_engine_state, replay, worked_example_transactions


def state_of(mmap, params=EngineParams(), stm=None, ltm=None):
    return EngineState(mmap, params, stm or {}, ltm or [])


def test_empty_map_snapshot():
    text = render_snapshot(state_of(new_mindmap()))
    lines = text.splitlines()
    assert lines[0] == "MINDMAP v1"
    assert lines[1] == "step 0"
    assert all(l.startswith("param ") for l in lines[2:])


def test_round_trip_identity_on_worked_example():
    engine = replay(worked_example_transactions())
    text = render_snapshot(engine.state)
    assert render_snapshot(parse_snapshot(text)) == text


def test_round_trip_preserves_exact_floats():
    engine = replay(worked_example_transactions())
    loaded = parse_snapshot(render_snapshot(engine.state))
    for pair, conn in engine.mmap.edges.items():
        assert loaded.mmap.edges[pair].weight == conn.weight
    for label, cell in engine.mmap.cells.items():
        assert loaded.mmap.cells[label].activation == cell.activation


def test_awkward_labels_round_trip():
    mmap = new_mindmap()
    weird = ['with space', 'tab\there', '"quoted"', "back\\slash", "pi|pe"]
    for i, label in enumerate(weird):
        mmap.cells[label] = ItemCell(label, 0.5, 0, 0)
    a, b = sorted(weird)[:2]
    mmap.edges[(a, b)] = Connection((a, b), 0.25, 0)
    sig = tuple(sorted(weird[:3]))
    stm = {sig: STMEntry(Pattern(sig, ()), 0, 1)}
    ltm = [LTMRecord(sig, 0, None, 1)]
    text = render_snapshot(state_of(mmap, stm=stm, ltm=ltm))
    loaded = parse_snapshot(text)
    assert set(loaded.mmap.cells) == set(weird)
    assert loaded.mmap.edges[(a, b)].weight == 0.25
    assert list(loaded.stm) == [sig]
    assert loaded.ltm[0].signature == sig
    assert render_snapshot(loaded) == text


def test_load_errors():
    with pytest.raises(SnapshotError, match="missing header"):
        parse_snapshot("")
    with pytest.raises(SnapshotError, match="missing header"):
        parse_snapshot("MINDMAP v2\nstep 0\n")
    with pytest.raises(SnapshotError, match="missing step"):
        parse_snapshot("MINDMAP v1\n")
    good = render_snapshot(state_of(new_mindmap()))
    with pytest.raises(SnapshotError, match="line 11"):
        parse_snapshot(good + "cell onlytwo 0.5\n")
    with pytest.raises(SnapshotError, match="missing params"):
        parse_snapshot("MINDMAP v1\nstep 0\n")


def test_ltm_open_marker():
    ltm = [LTMRecord(("A", "B"), 3, None, 1), LTMRecord(("C", "D"), 1, 5, 2)]
    text = render_snapshot(state_of(new_mindmap(), ltm=ltm))
    assert "ltm C|D 1 5 2" in text
    assert "ltm A|B 3 open 1" in text
    loaded = parse_snapshot(text)
    by_sig = {r.signature: r for r in loaded.ltm}
    assert by_sig[("A", "B")].is_open
    assert by_sig[("C", "D")].disappeared_at == 5


def test_file_round_trip(tmp_path):
    engine = replay(worked_example_transactions())
    path = tmp_path / "map.snap"
    save_snapshot(engine.state, str(path))
    first = path.read_bytes()
    save_snapshot(load_snapshot(str(path)), str(path))
    assert path.read_bytes() == first


def test_random_states_round_trip():
    rng = random.Random(123)
    for _ in range(100):
        state = random_engine_state(rng)
        text = render_snapshot(state)
        assert render_snapshot(parse_snapshot(text)) == text


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_float_serialization_is_lossless(x):
    mmap = new_mindmap()
    mmap.cells["A"] = ItemCell("A", x, 0, 0)
    loaded = parse_snapshot(render_snapshot(state_of(mmap)))
    assert loaded.mmap.cells["A"].activation == x
