"""Shared markup generators and the golden cleaning table."""

from __future__ import annotations

from hypothesis import strategies as st

# every markup rule class, raw -> cleaned under the default policy
GOLDEN = {
    "&-uh <I go> [//] I went to the store .": "I went to the store .",
    "I get [: got] bread and &=laughs milk .": "I get bread and milk .",
    "xxx .": "",
    "money (.) yes money .": "money yes money .",
    "&+cuh I brown water .": "cuh I brown water .",
    "(be)cause I thirsty .": "because I thirsty .",
    "I drink it (..) all +...": "I drink it all .",
    "and nice [+ exc] .": "and nice .",
    "I walk [/] walk yyy park .": "walk park .",
    "my dog [* s:r] comes too .": "my dog comes too .",
    "we see birds and +/.": "we see birds and .",
    "+< yes very tired .": "yes very tired .",
    "<my son> [//] my daughter visit (2.5) Sunday .": "my daughter visit Sunday .",
    "she bring (0:03.5) food yummy .": "she bring food yummy .",
    "we talk and &=sighs rest .": "we talk and rest .",
}

WORD = st.from_regex(r"[a-z][a-z']{0,6}", fullmatch=True)


@st.composite
def markup_segment(draw):
    kind = draw(st.integers(min_value=0, max_value=11))
    w = lambda: draw(WORD)  # noqa: E731
    if kind == 0:
        return w()
    if kind == 1:
        return f"<{w()} {w()}> [{draw(st.sampled_from(['/', '//', '///']))}]"
    if kind == 2:
        return f"[{draw(st.sampled_from(['/', '//']))}]"
    if kind == 3:
        return f"{w()} [: {w()} {w()}]"
    if kind == 4:
        return draw(st.sampled_from(["[+ exc]", "[* s:r]", "[% a note]", "[?]"]))
    if kind == 5:
        return f"&={w()}"
    if kind == 6:
        return f"&-{draw(st.sampled_from(['uh', 'um', 'er']))}"
    if kind == 7:
        return f"&+{w()}"
    if kind == 8:
        return draw(st.sampled_from(["(.)", "(..)", "(...)", "(2.5)", "(0:03.5)", "(12)"]))
    if kind == 9:
        return draw(st.sampled_from(["xxx", "yyy"]))
    if kind == 10:
        return f"({draw(st.sampled_from(['be', 'a', 'g']))}){w()}"
    return draw(st.sampled_from(["+...", "+/.", "+//.", "+<", "+\"", "+^"]))


MARKUP_TEXT = st.lists(markup_segment(), min_size=0, max_size=12).map(" ".join)

_MARKUP_LEFTOVERS = ("&", "[", "]", "<", ">", "(", ")")


def assert_no_markup(cleaned: str):
    for ch in _MARKUP_LEFTOVERS:
        assert ch not in cleaned, cleaned
    for tok in cleaned.split():
        assert tok not in ("xxx", "yyy"), cleaned
        assert not tok.startswith("+"), cleaned
