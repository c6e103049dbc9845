import io
import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from prescheck import __version__
from prescheck.cli import main, run
from prescheck.cliquewidth import hn_clique_expression
from prescheck.constructions import build_half_graph, half_graph_sides
from prescheck.graph import Flip
from prescheck.graphio import GraphDocument, dump_document
from prescheck.sctree import SCTree


def load_schemas() -> dict:
    out = {}
    for entry in resources.files("prescheck").joinpath("schemas").iterdir():
        if entry.name.endswith(".schema.json"):
            out[entry.name] = json.loads(entry.read_text(encoding="utf-8"))
    return out


SCHEMAS = load_schemas()
REGISTRY = Registry().with_resources(
    (name, Resource.from_contents(doc)) for name, doc in SCHEMAS.items()
)


def validator(name: str) -> Draft202012Validator:
    return Draft202012Validator(SCHEMAS[name], registry=REGISTRY)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    paths = {}
    for fam, n in (("H", 7), ("gadget", None)):
        argv = ["construct", fam] + (["--n", str(n)] if n else [])
        code, out, _ = invoke(*argv)
        assert code == 0
        paths[fam] = d / f"{fam}.json"
        paths[fam].write_text(out)
    half = GraphDocument(build_half_graph(3).graph, partition=half_graph_sides(3),
                         flip=Flip(2, frozenset({(0, 1)})))
    paths["half"] = d / "half.json"
    paths["half"].write_text(dump_document(half))
    tree = SCTree.node([SCTree.node([SCTree.leaf(0), SCTree.leaf(1)], {0, 1}), SCTree.leaf(2)], {1, 2})
    paths["tree"] = d / "tree.json"
    paths["tree"].write_text(json.dumps(tree.to_json()))
    paths["expr"] = d / "expr.json"
    paths["expr"].write_text(json.dumps(hn_clique_expression(7).to_json()))
    paths["formula"] = d / "f.txt"
    paths["formula"].write_text("exists x. exists y. E(x, y)")
    paths["bad"] = d / "bad.json"
    paths["bad"].write_text('{"order": 2, "edges": [[0, 0]]}')
    return paths


def commands(p):
    return {
        "construct": ["construct", "half-graph", "--n", "4"],
        "check-phi": ["check-phi", str(p["H"])],
        "minimal-model": ["minimal-model", str(p["H"])],
        "embeddings": ["embeddings", str(p["gadget"]), str(p["H"])],
        "flip": ["flip", str(p["half"])],
        "flipsum": ["flipsum", str(p["half"])],
        "translate": ["translate", "--formula", "exists x. exists y. E(x,y)", "--k", "1",
                      "--flip", "[[0,0]]"],
        "eval": ["eval", str(p["H"]), "--formula-file", str(p["formula"])],
        "cover": ["cover", str(p["H"]), "--q", "1", "--d", "1", "--n", "2"],
        "constants": ["constants", "--rho", "1", "--s", "2", "--gamma", "1", "--ell", "2",
                      "--p", "100"],
        "flipflat": ["flipflat", str(p["half"]), "--r", "1", "--k", "2", "--seed", "0"],
        "preservation-fuzz": ["preservation-fuzz", "--trials", "8", "--seed", "3"],
        "sc": ["sc", str(p["tree"]), "--path", "0"],
        "cw": ["cw", "--n", "7"],
    }


@pytest.mark.parametrize("name", sorted(commands({k: "x" for k in (
    "H", "gadget", "half", "tree", "expr", "formula")})))
def test_json_output_validates(files, name):
    argv = commands(files)[name] + ["--json"]
    code, out, err = invoke(*argv)
    assert code == 0, err
    cert = json.loads(out)
    validator("certificate.schema.json").validate(cert)
    validator(f"{name}.schema.json").validate(cert["witnesses"])
    assert cert["command"] == ["prescheck"] + argv
    assert cert["version"] == __version__
    # determinism: same argv, same bytes
    assert invoke(*argv)[1] == out


def test_inputs_are_hashed(files):
    _, out, _ = invoke("check-phi", str(files["H"]), "--json")
    cert = json.loads(out)
    assert list(cert["inputs"]) == [str(files["H"])]


def test_exit_codes(files):
    assert invoke("check-phi", str(files["H"]))[0] == 0
    assert invoke("check-phi", str(files["gadget"]))[0] == 1
    assert invoke("check-phi", str(files["H"]), "--literal-v")[0] == 1
    assert invoke("minimal-model", str(files["H"]))[0] == 0
    assert invoke("check-phi", str(files["bad"]))[0] == 2
    assert invoke("check-phi", "/nonexistent.json")[0] == 2
    assert invoke("flipflat", str(files["half"]), "--r", "1", "--k", "2")[0] == 2
    assert invoke("translate", "--formula", "exists x. E(x,", "--k", "1")[0] == 2
    assert invoke("check-phi", str(files["H"]), "--threads", "0")[0] == 2
    assert invoke("no-such-command")[0] == 2


def test_embedding_count_output(files):
    code, out, _ = invoke("embeddings", "--count-only", str(files["gadget"]), str(files["H"]))
    assert code == 0 and out.strip() == "1"


def test_eval_with_assignment(files):
    code, out, _ = invoke("eval", str(files["H"]), "--formula", "E(x, @a)", "--assign", "x=8")
    assert code == 0 and out.strip().startswith("true")
    assert invoke("eval", str(files["H"]), "--formula", "E(x, y)", "--assign", "x=1")[0] == 2


def test_cw_from_file(files):
    code, out, _ = invoke("cw", str(files["expr"]), "--json")
    assert code == 0
    assert json.loads(out)["witnesses"]["width"] == 4


def test_cw_reads_its_own_output(tmp_path):
    for extra in ([], ["--json"]):
        code, out, _ = invoke("cw", "--n", "8", *extra)
        path = tmp_path / "e.json"
        path.write_text(out)
        code, back, err = invoke("cw", str(path), "--json")
        assert code == 0, err
        assert json.loads(back)["witnesses"]["graph"]["order"] == 18


def test_help_and_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
    assert main(["--help"]) == 0
