import re

import signrank


def test_all_names_present(docs_dir):
    with (docs_dir / 'quick-references/api-reference.rst').open(encoding='utf-8') as fd:
        present_names = set(map(str.lstrip, re.findall(r'^ {4}\w+$', fd.read(), re.MULTILINE)))

    assert len(present_names) > 0
    for name in signrank.__all__:
        assert name in present_names
