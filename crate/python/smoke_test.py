"""Builds the extension with cargo, imports it and exercises the main entry points."""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "msnring-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "debug" / "libpymsnring.so"
    out = Path(tempfile.mkdtemp(prefix="pymsnring-"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, out / f"pymsnring{suffix}")
    return out


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import pymsnring as m

    ring = m.Ring("nc_p2:p=2")
    assert ring.order == 4 and ring.center_size() == 1
    assert ring.commuting_probability() == (5, 8)
    assert ring.centralizer_count() == 4
    assert ring.info()["quotient_type"] == [2, 2]

    g = m.Ring("mat2:p=3").commuting_graph()
    assert g.n == 78 and g.clique_decomposition() == "13K6"
    report = g.classify()
    assert report["msn_energy"] == 3250 and report["msn_integral"] == "integral", report

    assert m.Graph.path(3).msn_matrix() == [[0, 0, 0]] * 3
    assert m.Graph.complete(4).spectrum() == {"exact": True, "pairs": [[-9, 3], [27, 1]]}
    back = m.Graph.from_edge_list(g.to_edge_list())
    assert back.edges() == g.edges()

    pred = m.predict("T4_3", p=2, q=3)
    assert [a["decomposition"] for a in pred["alternatives"]] == ["3K6"], pred

    assert m.verify("t4_3", "prod(ut2:p=2,zn:n=3)", q=3)["verdict"] == "PASS"
    assert m.verify("t2_1", "zn:n=6")["verdict"] == "HYPOTHESIS_NOT_MET"
    verdicts = {r["verdict"] for r in m.sweep(["T4_1a"], [2, 3], [5])}
    assert verdicts == {"UNSUPPORTED"}, verdicts

    suite = m.property_suite(seed=1, trials=10)
    assert suite["enumerated"] == 271 and suite["sampled"] == 10

    try:
        m.Ring("mat2:p=4")
    except ValueError:
        pass
    else:
        raise AssertionError("non-prime p accepted")

    print(f"pymsnring smoke test ok ({len(m.theorems())} theorems)")


if __name__ == "__main__":
    main()
