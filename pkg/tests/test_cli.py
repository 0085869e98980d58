import pytest
from click.testing import CliRunner

from facegroup.cli import cli
from facegroup.services.formats import parse_sphere, write_complex, write_sphere
from facegroup.services.moves import apply_move, spider
from facegroup.services.spheres import constant, product


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def files(tmp_path, oct, fig3, fig10):
    paths = {}
    for name, text in (
        ("oct.cx", write_complex(oct.complex, oct.basepoint)),
        ("fig3.fs", write_sphere(fig3)),
        ("fig10.fs", write_sphere(fig10)),
        ("const44.fs", write_sphere(constant(oct, 4, 4))),
        ("const33.fs", write_sphere(constant(oct, 3, 3))),
        ("bump.fs", write_sphere(apply_move(constant(oct, 3, 3), spider(1, 2, oct.complex.lookup("e3"))))),
        ("tri.cx", "basepoint a\na b c\n"),
        ("around.el", "a b c a\n"),
        ("home.el", "a\n"),
    ):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_example_writes_builtins(runner, fig10, tmp_path):
    result = runner.invoke(cli, ["example", "fig10"])
    assert result.exit_code == 0
    assert result.stdout == write_sphere(fig10)

    out = tmp_path / "oct.cx"
    result = runner.invoke(cli, ["example", "octahedron", "-o", str(out)])
    assert result.exit_code == 0
    assert out.read_text().startswith("basepoint -e1\n")

    assert runner.invoke(cli, ["example", "fig99"]).exit_code == 2


def test_validate(runner, files, tmp_path):
    result = runner.invoke(cli, ["validate", "-c", files["oct.cx"], "-f", files["fig3.fs"]])
    assert result.exit_code == 0
    assert result.stdout == "ok 5x4\n"

    bad = tmp_path / "bad.fs"
    bad.write_text((tmp_path / "fig3.fs").read_text().replace(" e1  ", " -e2 "))
    result = runner.invoke(cli, ["validate", "-f", str(bad)])
    assert result.exit_code == 1
    assert result.stdout.startswith("invalid:")
    assert "(2,1)" in result.stdout

    broken = tmp_path / "broken.fs"
    broken.write_text("sphere 2\n")
    result = runner.invoke(cli, ["validate", "-f", str(broken)])
    assert result.exit_code == 2
    assert "line 1" in result.stderr


def test_degree_from_stdin(runner, fig10):
    result = runner.invoke(cli, ["degree", "--face", "e1 e2 e3"], input=write_sphere(fig10))
    assert result.exit_code == 0
    assert result.stdout == "-1\n"
    result = runner.invoke(cli, ["degree", "--face", "e1 e3 e2"], input=write_sphere(fig10))
    assert result.stdout == "1\n"


def test_degree_needs_an_orientation_off_the_octahedron(runner, files, tmp_path):
    f = tmp_path / "c.fs"
    f.write_text("sphere 1 1\na a\na a\n")
    result = runner.invoke(cli, ["degree", "-c", files["tri.cx"], "--face", "a b c", str(f)])
    assert result.exit_code == 1
    assert result.stderr.startswith("error:")


def test_contig(runner, files):
    result = runner.invoke(cli, ["contig", files["fig3.fs"], files["fig3.fs"]])
    assert (result.exit_code, result.stdout) == (0, "true\n")
    result = runner.invoke(cli, ["contig", files["fig10.fs"], files["const44.fs"]])
    assert (result.exit_code, result.stdout) == (1, "false\n")
    result = runner.invoke(cli, ["contig", files["fig10.fs"], files["fig3.fs"]])
    assert result.exit_code == 1
    assert "error:" in result.stderr


def test_mul_inv_normalize(runner, files, oct, fig3, fig10):
    result = runner.invoke(cli, ["mul", files["fig3.fs"], files["fig10.fs"]])
    assert result.exit_code == 0
    assert parse_sphere(result.stdout, oct).grid == product(fig3, fig10).grid

    result = runner.invoke(cli, ["inv", files["fig10.fs"]])
    assert parse_sphere(result.stdout, oct).grid == tuple(tuple(reversed(r)) for r in fig10.grid)

    result = runner.invoke(cli, ["normalize", files["const44.fs"]])
    assert result.stdout == "sphere 1 1\n-e1 -e1\n-e1 -e1\n"


def test_search_is_deterministic(runner, files, tmp_path):
    outputs = []
    for threads in ("1", "2"):
        cert = tmp_path / f"run{threads}.cert"
        result = runner.invoke(
            cli,
            ["search", files["bump.fs"], files["const33.fs"], "--max-states", "5000", "--threads", threads, "-o", str(cert)],
        )
        assert result.exit_code == 0
        assert result.stdout.startswith("Equivalent (")
        outputs.append(cert.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"cert ")


def test_search_strategy_option(runner, files, tmp_path):
    certs = []
    for strategy in ("bfs", "sized"):
        cert = tmp_path / f"{strategy}.cert"
        args = ["search", files["bump.fs"], files["const33.fs"], "--max-states", "5000", "--threads", "1"]
        result = runner.invoke(cli, args + ["--strategy", strategy, "-o", str(cert)])
        assert result.exit_code == 0
        certs.append(cert.read_text())
    default = tmp_path / "default.cert"
    runner.invoke(cli, ["search", files["bump.fs"], files["const33.fs"], "--threads", "1", "-o", str(default)])
    assert default.read_text() == certs[0]
    bad = runner.invoke(cli, ["search", files["bump.fs"], files["const33.fs"], "--strategy", "dfs"])
    assert bad.exit_code == 2


def test_search_unknown(runner, files):
    result = runner.invoke(cli, ["search", files["fig10.fs"], files["const44.fs"], "--max-states", "300", "--threads", "1"])
    assert result.exit_code == 1
    assert result.stdout.startswith("Unknown (budget reached")


def test_render(runner, files):
    result = runner.invoke(cli, ["render", files["fig3.fs"]])
    assert result.stdout.splitlines()[1] == "-e1 -e3 e2  e3  e2  -e1"


def test_loops(runner, files):
    result = runner.invoke(cli, ["loops", "-c", files["tri.cx"], files["around.el"], files["home.el"]])
    assert result.exit_code == 0
    assert result.stdout.startswith("Equivalent (")


def test_bridge_commands(runner, files, tmp_path):
    gm = tmp_path / "fig3.gm"
    result = runner.invoke(cli, ["bridge", "restrict", files["fig3.fs"], "-o", str(gm)])
    assert result.exit_code == 0
    assert gm.read_text().startswith("grid 5 4\n")

    result = runner.invoke(cli, ["bridge", "dconstruct", str(gm)])
    assert result.exit_code == 0
    assert result.stdout.startswith("sphere 11 9\n")

    result = runner.invoke(cli, ["bridge", "check-digital", str(gm)])
    assert (result.exit_code, result.stdout) == (0, "true\n")

    cert = tmp_path / "etd.cert"
    result = runner.invoke(cli, ["bridge", "check-etd", files["fig3.fs"], "-o", str(cert)])
    assert result.exit_code == 0
    assert "from 11x9" in result.stdout
    assert cert.read_text().startswith("cert ")


def test_missing_basepoint_is_a_parse_error(runner, files, tmp_path):
    cx = tmp_path / "nobase.cx"
    cx.write_text("a b c\n")
    result = runner.invoke(cli, ["validate", "-c", str(cx), "-f", files["fig3.fs"]])
    assert result.exit_code == 2


def test_collapse_chain_command(runner):
    result = runner.invoke(cli, ["bridge", "collapse-chain", "2", "3", "2"])
    assert result.exit_code == 0
    assert result.stdout.startswith("ok (")
    assert runner.invoke(cli, ["bridge", "collapse-chain", "2", "2", "1"]).exit_code == 2
