"""Batch front door: spinorsurf <command> --config <path> [--out <dir>].

Commands
  generate     write an OBJ mesh of a preset or Weierstrass-generated patch
  restrict     write a CSV of the restricted spinor field and its star
  verify       run the verification battery, write report.json
  reconstruct  integrate the period forms, write the OBJ and alignment stats
  report       merge previously written report files into one

Exit status: 0 on success, 1 when any check fails (or a reconstruction is
refused), 2 on configuration errors.  Reports are deterministic: identical
configuration and seed give byte-identical files.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import charts, periods, spinorfield as sf, verify, weierstrass as ws
from .errors import ConfigError, NotExact, SpinorSurfError


def _fmt(x):
    return format(float(x), ".17g")


def export_obj(positions, path, periodic_u=False, periodic_v=False, comment=""):
    """Write a grid mesh as Wavefront OBJ with deterministic bytes.

    Vertices appear in row-major node order; every quad is split into two
    triangles oriented counter-clockwise with respect to the grid normal
    x_u x x_v.  Periodic seams reuse the first row/column indices instead of
    duplicating vertices.
    """
    pos = np.asarray(positions, dtype=float)
    n, m = pos.shape[:2]
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"# grid {n}x{m}, row-major vertex order")
    lines.append("# periodic seams reuse first-row vertex indices (no duplication)")
    for i in range(n):
        for j in range(m):
            x, y, z = pos[i, j]
            lines.append(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}")

    def vid(i, j):
        return (i % n) * m + (j % m) + 1

    ni = n if periodic_u else n - 1
    nj = m if periodic_v else m - 1
    for i in range(ni):
        for j in range(nj):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            lines.append(f"f {a} {b} {c}")
            lines.append(f"f {a} {c} {d}")
    data = "\n".join(lines) + "\n"
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data.encode())
    return path


def export_csv(geom, fields, path):
    """CSV of per-node fields: node index, u, v, then one column per entry."""
    n, m = geom.shape
    names = list(fields)
    header = "index,u,v," + ",".join(names)
    lines = [header]
    for i in range(n):
        for j in range(m):
            row = [str(i * m + j), _fmt(geom.u[i]), _fmt(geom.v[j])]
            row += [_fmt(fields[k][i, j]) for k in names]
            lines.append(",".join(row))
    data = "\n".join(lines) + "\n"
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data.encode())
    return path


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

_MODES = ("analytic", "fd")


def _as_surface_list(cfg):
    raw = cfg.get("surfaces", cfg.get("surface"))
    if raw is None:
        raise ConfigError("config needs 'surface' or 'surfaces'")
    if isinstance(raw, (str, dict)):
        raw = [raw]
    out = []
    for item in raw:
        if isinstance(item, str):
            out.append({"name": item, "params": {}})
        elif isinstance(item, dict) and "name" in item:
            out.append({"name": item["name"], "params": dict(item.get("params", {}))})
        else:
            raise ConfigError(f"bad surface entry: {item!r}")
    for s in out:
        name = s["name"]
        base = name.split(":", 1)[1] if name.startswith("weierstrass:") else name
        known = set(charts.PRESETS) | set(ws.DATA_PRESETS)
        if base not in known:
            raise ConfigError(f"unknown surface {name!r}; known: {sorted(known)}")
    return out


def _as_grid_list(cfg):
    grid = cfg.get("grid", [[32, 32], [64, 64], [128, 128]])
    if not isinstance(grid, list) or not grid:
        raise ConfigError("'grid' must be a pair or a list of pairs")
    if all(isinstance(x, (int, float)) for x in grid):
        grid = [grid]
    pairs = []
    for item in grid:
        if not (isinstance(item, list) and len(item) == 2):
            raise ConfigError(f"grid entry {item!r} is not a pair")
        n, m = item
        if int(n) != n or int(m) != m or n < 8 or m < 8:
            raise ConfigError(f"grid entry {item!r}: resolutions are integers >= 8")
        pairs.append((int(n), int(m)))
    ns = [p[0] for p in pairs]
    if len(ns) > 1 and any(b <= a for a, b in zip(ns, ns[1:])):
        raise ConfigError("sweep grids must be strictly increasing")
    return pairs


def _as_spinor(cfg):
    raw = cfg.get("ambient_spinor", [[1.0, 0.0], [0.0, 0.0]])
    try:
        a = complex(raw[0][0], raw[0][1])
        b = complex(raw[1][0], raw[1][1])
    except (TypeError, IndexError) as exc:
        raise ConfigError("'ambient_spinor' must be two [re, im] pairs") from exc
    if abs(a) == 0 and abs(b) == 0:
        raise ConfigError("ambient spinor must be nonzero")
    return np.array([a, b], dtype=complex)


def load_config(path):
    try:
        cfg = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    mode = cfg.get("derivative_mode", "analytic")
    if mode not in _MODES:
        raise ConfigError(f"derivative_mode must be one of {_MODES}")
    tols = cfg.get("tolerances", {})
    if not isinstance(tols, dict) or any(not (float(v) > 0) for v in tols.values()):
        raise ConfigError("tolerances must be positive numbers")
    seed = cfg.get("seed", 1234)
    if int(seed) != seed:
        raise ConfigError("seed must be an integer")
    return cfg


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _build_surface(entry, shape):
    name = entry["name"]
    params = entry["params"]
    if name.startswith("weierstrass:"):
        data = ws.DATA_PRESETS[name.split(":", 1)[1]](**params)
        return ws.weierstrass_immersion(data, shape)
    return charts.make_chart(name, shape, **params)


def cmd_generate(cfg, out):
    surfaces = _as_surface_list(cfg)
    shape = _as_grid_list(cfg)[-1]
    written = []
    for entry in surfaces:
        chart = _build_surface(entry, shape)
        pos = chart.sample()
        fname = cfg.get("output", {}).get("mesh", f"{chart.name.replace(':', '_')}.obj")
        path = export_obj(
            pos,
            Path(out) / fname,
            chart.periodic_u,
            chart.periodic_v,
            comment=f"surface {chart.name}, domain {chart.domain}",
        )
        written.append(str(path))
    print("\n".join(written))
    return 0


def cmd_restrict(cfg, out):
    surfaces = _as_surface_list(cfg)
    shape = _as_grid_list(cfg)[-1]
    Phi = _as_spinor(cfg)
    mode = cfg.get("derivative_mode", "analytic")
    written = []
    for entry in surfaces:
        chart = _build_surface(entry, shape)
        geom = charts.compute_geometry(chart, mode if chart.d1 is not None else "fd")
        phi = sf.restrict_parallel(Phi, geom)
        star = phi.star()
        fields = {
            "phi1_re": np.real(phi.comp[..., 0]),
            "phi1_im": np.imag(phi.comp[..., 0]),
            "phi2_re": np.real(phi.comp[..., 1]),
            "phi2_im": np.imag(phi.comp[..., 1]),
            "star1_re": np.real(star.comp[..., 0]),
            "star1_im": np.imag(star.comp[..., 0]),
            "star2_re": np.real(star.comp[..., 1]),
            "star2_im": np.imag(star.comp[..., 1]),
        }
        fname = cfg.get("output", {}).get("fields", f"{chart.name.replace(':', '_')}_spinor.csv")
        written.append(str(export_csv(geom, fields, Path(out) / fname)))
    print("\n".join(written))
    return 0


def cmd_verify(cfg, out):
    surfaces = [s["name"] for s in _as_surface_list(cfg)]
    grids = tuple(p[0] for p in _as_grid_list(cfg))
    Phi = _as_spinor(cfg)
    rep = verify.verify_all(
        surfaces=tuple(surfaces),
        grids=grids,
        Phi=Phi,
        mode=cfg.get("derivative_mode", "analytic"),
        seed=int(cfg.get("seed", 1234)),
        integral_grid=tuple(cfg.get("integral_grid", (256, 128))),
        tolerances=cfg.get("tolerances", {}),
    )
    fname = cfg.get("output", {}).get("report", "report.json")
    path = Path(out) / fname
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(rep.to_json().encode())
    failed = rep.failed
    print(f"{path}: {len(rep.entries)} checks, {len(failed)} failed")
    for e in failed:
        print(f"  FAIL {e.check_id}: residual {e.residual:.3e} > tol {e.tolerance:.1e}")
    return 1 if failed else 0


def cmd_reconstruct(cfg, out):
    surfaces = _as_surface_list(cfg)
    shape = _as_grid_list(cfg)[-1]
    Phi = _as_spinor(cfg)
    mode = cfg.get("derivative_mode", "analytic")
    status = 0
    results = {}
    for entry in surfaces:
        chart = _build_surface(entry, shape)
        geom = charts.compute_geometry(chart, mode if chart.d1 is not None else "fd")
        star = sf.restrict_parallel(Phi, geom).star()
        P = periods.period_forms(star)
        try:
            rec = periods.reconstruct(P, geom)
        except NotExact as exc:
            results[chart.name] = {"error": str(exc)}
            status = 1
            continue
        _, _, rms = periods.rigid_align(geom.pos, rec.points)
        pts = geom.pos.reshape(-1, 3)
        diam = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
        fname = f"{chart.name.replace(':', '_')}_reconstructed.obj"
        export_obj(rec.points, Path(out) / fname, comment=f"reconstruction of {chart.name}")
        results[chart.name] = {"rms": rms, "diameter": diam, "rms_over_diameter": rms / diam}
    path = Path(out) / cfg.get("output", {}).get("reconstruction", "reconstruction.json")
    path.write_bytes((json.dumps(results, sort_keys=True, indent=2) + "\n").encode())
    print(path)
    return status


def cmd_report(cfg, out):
    inputs = cfg.get("inputs")
    if not inputs:
        raise ConfigError("'report' needs a list of report files in 'inputs'")
    entries = []
    conventions = None
    for p in inputs:
        try:
            data = json.loads(Path(p).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read report {p}: {exc}") from exc
        entries.extend(data.get("entries", []))
        conventions = conventions or data.get("conventions")
    entries.sort(key=lambda e: (e["check_id"], e.get("surface", "")))
    merged = {
        "conventions": conventions or {},
        "entries": entries,
        "summary": {"total": len(entries), "failed": sum(not e["pass"] for e in entries)},
    }
    path = Path(out) / cfg.get("output", {}).get("report", "aggregated.json")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes((json.dumps(merged, sort_keys=True, indent=2) + "\n").encode())
    print(f"{path}: {merged['summary']['total']} checks, {merged['summary']['failed']} failed")
    return 1 if merged["summary"]["failed"] else 0


COMMANDS = {
    "generate": cmd_generate,
    "restrict": cmd_restrict,
    "verify": cmd_verify,
    "reconstruct": cmd_reconstruct,
    "report": cmd_report,
}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="spinorsurf",
        description="surfaces from spinors: generation, restriction, verification, reconstruction",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="path to the JSON run configuration")
    parser.add_argument("--out", default=".", help="output directory (default: cwd)")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config)
        if "command" in cfg and cfg["command"] != args.command:
            raise ConfigError(
                f"config is for command {cfg['command']!r}, invoked as {args.command!r}"
            )
        Path(args.out).mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](cfg, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SpinorSurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
