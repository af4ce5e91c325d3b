"""The command-line layer only talks to the public library surface."""
import ast
from pathlib import Path

import quasiharm

CLI_DIR = Path(quasiharm.__file__).parent / "cli"
LIBRARY = {"ring", "linsolve", "coxeter", "dunkl", "quasiharmonic", "dihedral", "frobenius"}
FORBIDDEN = {"ExactMatrix", "fraction_free_eliminate", "kernel_basis", "block_kernel_basis", "rank", "rref"}
STDLIB_OK = {"__future__", "argparse", "json", "sys", "time", "concurrent", "dataclasses",
             "fractions", "math", "typing", "pathlib", "functools", "itertools"}


def _imports():
    for path in sorted(CLI_DIR.glob("*.py")):
        tree = ast.parse(path.read_text(), filename=str(path))
        for node in ast.walk(tree):
            if isinstance(node, ast.ImportFrom):
                yield path.name, node.level, node.module or "", [a.name for a in node.names]
            elif isinstance(node, ast.Import):
                for a in node.names:
                    yield path.name, 0, a.name, []


def test_cli_imports_public_names_only():
    seen_library = set()
    for fname, level, module, names in _imports():
        if level == 0:
            assert module.split(".")[0] in STDLIB_OK, f"{fname} imports {module}"
            continue
        if level == 1:
            # sibling modules inside the cli package
            assert module in ("report", "suites", "main", ""), f"{fname}: .{module}"
            continue
        top = module.split(".")[0]
        if not module:
            assert names == ["__version__"], f"{fname} imports {names} from the package root"
            continue
        assert top in LIBRARY, f"{fname} imports ..{module}"
        seen_library.add(top)
        for n in names:
            assert not n.startswith("_"), f"{fname} imports private {module}.{n}"
            assert n not in FORBIDDEN, f"{fname} reaches into solver internals: {module}.{n}"
    assert seen_library >= {"dihedral", "quasiharmonic", "frobenius"}


def test_library_does_not_import_cli():
    for path in Path(quasiharm.__file__).parent.glob("*.py"):
        if path.name == "__main__.py":
            continue
        tree = ast.parse(path.read_text())
        for node in ast.walk(tree):
            if isinstance(node, ast.ImportFrom) and node.module:
                assert not node.module.startswith("cli") and ".cli" not in node.module, path.name
