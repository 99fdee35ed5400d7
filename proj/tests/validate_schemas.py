#!/usr/bin/env python3
"""Validate gromov JSON output against schemas/gromov.schema.json.

usage: validate_schemas.py <gromov binary> <source dir>
"""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

# golden file prefix -> schema definition (non-JSON outputs are absent)
GOLDEN = {
    "build_comb_json": "graph",
    "ball_": "ball",
    "dist_": "distance",
    "equiv_line": "equivalence",
    "aut_": "automorphisms",
    "classes_": "classes",
    "check_w_stability": "w_report",
    "check_v_": "v_search",
    "certify_comb": "certificate",
    "certify_line_fails": "certify_failure",
    "certify_dense_aperiodic": "aperiodicity",
    "certify_dense_chaotic": "verdict",
    "enumerate_": "enumeration",
}

TEXT_ONLY = ("build_comb_dot", "build_single_vertex_dot", "color_", "check_w_constant", "equiv_none")


def validator(schema, definition):
    registry = Registry().with_resource(schema["$id"], Resource.from_contents(schema))
    return jsonschema.Draft202012Validator({"$ref": f"{schema['$id']}#/$defs/{definition}"}, registry=registry)


def main():
    binary, source = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((source / "schemas" / "gromov.schema.json").read_text())
    errors = 0
    checked = 0

    def check(label, definition, document):
        nonlocal errors, checked
        checked += 1
        problems = list(validator(schema, definition).iter_errors(document))
        for p in problems:
            print(f"FAIL {label}: {'/'.join(map(str, p.absolute_path))}: {p.message}")
        errors += bool(problems)

    for path in sorted((source / "tests" / "golden").glob("*.out")):
        name = path.stem
        if name.startswith(TEXT_ONLY):
            continue
        definition = next((d for prefix, d in GOLDEN.items() if name.startswith(prefix)), None)
        if definition is None:
            print(f"FAIL {name}: no schema mapping")
            errors += 1
            continue
        check(name, definition, json.loads(path.read_text()))

    def gromov(*args, code=0):
        r = subprocess.run([binary, *args], capture_output=True, text=True)
        if r.returncode != code:
            raise SystemExit(f"gromov {' '.join(args)} exited {r.returncode}: {r.stderr}")
        return json.loads(r.stdout) if r.stdout else None

    with tempfile.TemporaryDirectory() as tmp:
        cert = str(pathlib.Path(tmp) / "cert.json")
        gromov("certify", '{"construction":"dense","point":"a0.0"}', "-N", "2", "-M", "2",
               "--search-radius", "200", "-o", cert)
        check("certify dense", "certificate", json.loads(pathlib.Path(cert).read_text()))
        check("verify dense", "certificate_report", gromov("verify", cert))
        doc = json.loads(pathlib.Path(cert).read_text())
        doc["levels"][1]["equivalence"]["tolerance"] = "1"
        pathlib.Path(cert).write_text(json.dumps(doc))
        check("verify tampered", "certificate_report", gromov("verify", cert, code=1))
    check("build dense", "graph", gromov("build", "dense", "-R", "2"))
    check("build H", "graph", gromov("build", '{"construction":"H","n":2,"budget":5}', "-R", "3"))
    check("aperiodic line", "aperiodicity", gromov("certify", "line", "--mode", "aperiodic", "-N", "2"))
    check("chaotic comb", "verdict", gromov("certify", "comb", "--mode", "chaotic", "-N", "2", "-M", "2"))
    check("check-w off W", "w_report", gromov("check-w", "line", "-n", "1", "--stability"))
    check("dist exact", "distance", gromov("dist", "champernowne", '{"construction":"champernowne","point":"-1"}'))

    print(f"{checked} documents checked, {errors} invalid")
    return 1 if errors else 0


if __name__ == "__main__":
    sys.exit(main())
