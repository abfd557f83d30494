"""Fixed CLI inputs shared by the golden-file tests and the acceptance run."""
import io
import json
from pathlib import Path

from lexalg.cli import main

GOLDEN = Path(__file__).parent / "golden"

RELATION = {"n": 4, "edges": [[1, 1], [1, 2], [2, 1], [2, 2], [2, 3], [3, 3], [4, 4], [1, 3]]}

CASES = {
    "stage_w2": ["stage", "--order", "w[2]", "--depth", "3"],
    "stage_q2": ["stage", "--order", "q[2]", "--depth", "3"],
    "radical_mixed": ["radical", "--order", "w[2] + z[2]", "--depth", "2"],
    "semisimple_1q": ["semisimple", "--order", "1[2] + q[2]"],
    "semisimple_wstar_w": ["semisimple", "--order", "w*[2] + w[2]"],
    "classify_rotation": ["classify", "--order", "z[2,3]", "--other", "z[3,2]"],
    "classify_wstar_w_z": ["classify", "--order", "w*[2] + w[2]", "--other", "z[2]", "--pretty"],
    "links_z2": ["links", "--order", "z[2]", "--depth", "2"],
    "links_w2": ["links", "--order", "w[2]", "--depth", "3", "--horizon", "2"],
    "decompose_mixed": ["decompose", "--order", "3[2,3,2] + w[2] + q[2] + 1[2] + q[2]"],
    "oracle_preorder": ["oracle", "--relation", "{relation}"],
}


def run(argv, tmp_dir):
    argv = list(argv)
    if "{relation}" in argv:
        path = Path(tmp_dir) / "relation.json"
        path.write_text(json.dumps(RELATION), encoding="utf-8")
        argv[argv.index("{relation}")] = str(path)
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()
