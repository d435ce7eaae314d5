import pytest
from hypothesis import given, settings, strategies as st

from padic_cusp.errors import ConfigError
from padic_cusp.yu import validate_yu_datum
from padic_cusp.yu_config import builtin_names, load_yu, parse_yu, read_builtin, serialize_yu

BUILTINS = ["gl2_det_twist", "gl2_nongeneric", "gl2_unramified_depth2", "sl2_depth_zero_x2", "sl2_simple"]


def test_builtin_names():
    assert builtin_names() == BUILTINS


@pytest.mark.parametrize("name", BUILTINS)
def test_round_trip(name):
    datum, text = load_yu(f"builtin:{name}")
    again = serialize_yu(parse_yu(serialize_yu(datum)))
    assert again == serialize_yu(datum)
    assert validate_yu_datum(parse_yu(again)).valid == validate_yu_datum(datum).valid


def test_load_from_path(tmp_path):
    path = tmp_path / "simple.yu"
    path.write_text(read_builtin("sl2_simple"))
    datum, _ = load_yu(str(path))
    assert validate_yu_datum(datum).valid
    assert str(datum.depths[0]) == "1/2"


def test_unknown_builtin():
    with pytest.raises(ConfigError):
        load_yu("builtin:nope")


@pytest.mark.parametrize("edit", [
    ("p = 7\n", ""),
    ("r1 = 1/2", "r1 = half"),
    ("quadratic_form", "bogus"),
    ("SL2\n", "SP2\n"),
    ("[rho]", "[other]"),
])
def test_malformed_data(edit):
    text = read_builtin("sl2_simple").replace(*edit)
    with pytest.raises(ConfigError):
        parse_yu(text)


@settings(max_examples=30)
@given(st.text(max_size=80))
def test_arbitrary_text_fails_cleanly(text):
    try:
        parse_yu(text)
    except ConfigError:
        pass
