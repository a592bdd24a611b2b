"""Batch front-end: parse a config, run a pipeline, emit deterministic reports.

Commands: datum, group, molien, hh-findim, hc-findim, crossed-census, hp,
induce, irr0, verify-basis.  Reports are versioned JSON (plus a CSV mirror
of the verify-basis trace matrix), byte-identical across repeated runs and
cached on disk under a content digest of the effective config.

Exit codes: 0 success, 2 falsification flag (count/rank mismatch), 1 error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .catalog import load_catalog
from .config import ConfigError, RunConfig, apply_k_override, load_config
from .hecke import HeckeAlgebra
from .homology import (FinDimAlgebra, HomologyError, SizeBoundExceeded,
                       crossed_product_census, cyclic_homology,
                       hochschild_homology, hp_census_hecke,
                       verify_basis_theorem)
from .linalg import QI
from .modules import (InductionDatum, ModuleError, auto_catalog,
                      central_character, commutant, decompose, induce,
                      irr0_census, is_tempered, one_dim_modules,
                      parabolic_algebra, weights)
from .rootdata import RootDatumError
from .weyl import WeylError, conjugacy_census
from .linalg import zero_vec

SCHEMA = "gradedhecke-report/1"

COMMANDS = ("datum", "group", "molien", "hh-findim", "hc-findim",
            "crossed-census", "hp", "induce", "irr0", "verify-basis")


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, QI):
        return {"re": str(x.re), "im": str(x.im)}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _dump(report: Dict[str, Any]) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def _series_payload(series) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"order": series.order,
                               "coeffs": list(series.coeffs)}
    if series.witness is not None:
        num, den = series.witness
        payload["witness_num"] = [str(c) for c in num]
        payload["witness_den"] = [str(c) for c in den]
    return payload


def _base_report(command: str, cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "datum": {"type": cfg.datum_type, "ambient": cfg.ambient,
                  "label": algebra.datum.label,
                  "crystallographic": algebra.datum.crystallographic},
        "k": [str(v) for v in algebra.kmap.values],
        "gamma_order": len(algebra.group.gamma),
    }


def _cmd_datum(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    d = algebra.datum
    rep = _base_report("datum", cfg, algebra)
    rep.update({
        "cartan": d.cartan(),
        "gram": d.gram,
        "simple_roots": d.simple_roots,
        "simple_coroots": d.simple_coroots,
        "root_count": len(d.roots),
        "roots": d.roots,
        "positive_roots": d.positive_roots(),
    })
    return rep


def _cmd_group(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    census = conjugacy_census(algebra.group)
    rep = _base_report("group", cfg, algebra)
    rep.update({
        "order": len(algebra.group),
        "classes": [{"representative": repr(e.rep), "size": e.size,
                     "fixed_dim": e.fixed_dim,
                     "centralizer_order": len(e.centralizer)}
                    for e in census.entries],
    })
    return rep


def _cmd_molien(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    census = crossed_product_census(algebra.datum, truncation=cfg.truncation,
                                    group=algebra.group)
    rep = _base_report("molien", cfg, algebra)
    rep.update({
        "truncation": cfg.truncation,
        "classes": [{"representative": e.rep_word, "size": e.size,
                     "fixed_dim": e.fixed_dim,
                     "series": [_series_payload(s) for s in e.series]}
                    for e in census.entries],
    })
    return rep


def _cmd_crossed_census(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    census = crossed_product_census(algebra.datum, truncation=cfg.truncation,
                                    group=algebra.group)
    rep = _base_report("crossed-census", cfg, algebra)
    rep.update({
        "truncation": census.truncation,
        "class_count": census.class_count,
        "hp0": census.hp0,
        "hp1": census.hp1,
        "totals": [_series_payload(s) for s in census.totals],
        "classes": [{"representative": e.rep_word, "size": e.size,
                     "fixed_dim": e.fixed_dim,
                     "series": [_series_payload(s) for s in e.series]}
                    for e in census.entries],
    })
    return rep


def _cmd_hp(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    r = hp_census_hecke(algebra)
    rep = _base_report("hp", cfg, algebra)
    rep.update({"class_count": r.class_count, "hp0": r.hp0, "hp1": r.hp1})
    return rep


def _findim_algebra(cfg: RunConfig, algebra: HeckeAlgebra) -> FinDimAlgebra:
    if cfg.findim_kind == "ground":
        return FinDimAlgebra.ground_field()
    if cfg.findim_kind == "matrix":
        return FinDimAlgebra.matrix_algebra(cfg.findim_size)
    return FinDimAlgebra.of_weyl_group(algebra.group)


def _cmd_hh_findim(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    a = _findim_algebra(cfg, algebra)
    dims = hochschild_homology(a, cfg.n_max, bound=cfg.max_dim)
    rep = _base_report("hh-findim", cfg, algebra)
    rep.update({"algebra": a.label, "algebra_dim": a.dim,
                "n_max": cfg.n_max, "hh": dims})
    return rep


def _cmd_hc_findim(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    a = _findim_algebra(cfg, algebra)
    dims = cyclic_homology(a, cfg.n_max, bound=cfg.max_dim)
    rep = _base_report("hc-findim", cfg, algebra)
    rep.update({"algebra": a.label, "algebra_dim": a.dim,
                "n_max": cfg.n_max, "hc": dims})
    return rep


def _cmd_induce(cfg: RunConfig, algebra: HeckeAlgebra) -> Dict:
    if cfg.induce_block is None:
        raise ConfigError("the induce command needs an induce block")
    blk = cfg.induce_block
    datum = algebra.datum
    P = cfg.root_indices(datum, blk.get("p", []))
    _, sub_alg = parabolic_algebra(algebra, P)
    delta_name = str(blk.get("delta", "steinberg"))
    candidates = one_dim_modules(sub_alg)
    matching = [m for m in candidates if m.name == delta_name]
    if not matching:
        raise ConfigError(
            f"no one-dimensional module named {delta_name!r}; "
            f"available: {sorted(m.name for m in candidates)}")
    lam_re = blk.get("lambda_re")
    lam_im = blk.get("lambda_im")
    lam_re = tuple(Fraction(x) for x in lam_re) if lam_re else \
        zero_vec(datum.ambient_dim)
    lam_im = tuple(Fraction(x) for x in lam_im) if lam_im else \
        zero_vec(datum.ambient_dim)
    extended = bool(blk.get("extended", True))
    xi = InductionDatum(P=tuple(P), delta=matching[0], lam_re=lam_re,
                        lam_im=lam_im)
    module = induce(algebra, xi, extended=extended)
    wts = weights(module)
    orbit, real = central_character(module)
    dec = decompose(module) if not module.is_complex() else None
    rep = _base_report("induce", cfg, algebra)
    rep.update({
        "P": list(P),
        "delta": delta_name,
        "extended": extended,
        "dim": module.dim,
        "weights": [{"re": re, "im": im, "multiplicity": m}
                    for (re, im), m in wts],
        "central_character": [{"re": re, "im": im} for re, im in orbit],
        "real_central_character": real,
        "tempered": is_tempered(module),
        "commutant_dim": len(commutant(module)),
        "restriction_character": module.restriction_character().values,
    })
    if dec is not None:
        rep["decomposition"] = [{"dim": m.dim, "multiplicity": c}
                                for m, c in dec]
    return rep


def _catalog_for(cfg: RunConfig, algebra: HeckeAlgebra, catalog_path):
    user = []
    path = catalog_path or cfg.catalog_path
    if path:
        user = load_catalog(algebra, Path(path).read_text(encoding="utf-8"))
    return auto_catalog(algebra, user_entries=user)


def _cmd_irr0(cfg: RunConfig, algebra: HeckeAlgebra, catalog_path) -> Dict:
    catalog = _catalog_for(cfg, algebra, catalog_path)
    modules = irr0_census(algebra, catalog)
    census = conjugacy_census(algebra.group)
    rep = _base_report("irr0", cfg, algebra)
    rep.update({
        "class_count": len(census),
        "count": len(modules),
        "class_representatives": [repr(e.rep) for e in census.entries],
        "modules": [{
            "name": m.name,
            "dim": m.dim,
            "P": list(m.meta.get("P", ())),
            "delta": m.meta.get("delta", ""),
            "tempered": True,
            "central_character": [{"re": re, "im": im}
                                  for re, im in central_character(m)[0]],
            "restriction_character": m.restriction_character().values,
        } for m in modules],
    })
    return rep


def _cmd_verify_basis(cfg: RunConfig, algebra: HeckeAlgebra, catalog_path) -> Dict:
    catalog = _catalog_for(cfg, algebra, catalog_path)
    report = verify_basis_theorem(algebra, catalog)
    census = conjugacy_census(algebra.group)
    rep = _base_report("verify-basis", cfg, algebra)
    rep.update({
        "class_count": report.class_count,
        "class_representatives": [repr(e.rep) for e in census.entries],
        "hp0": report.hp0,
        "irr0_count": report.irr0_count,
        "module_names": list(report.module_names),
        "module_dims": list(report.module_dims),
        "trace_matrix": report.trace_matrix,
        "matrix_rank": report.matrix_rank,
        "counts_match": report.counts_match,
        "full_rank": report.full_rank,
        "passed": report.passed,
    })
    return rep


def run(command: str, cfg: RunConfig, out_dir: str = "out",
        catalog_path: Optional[str] = None) -> int:
    """Run one command; write report files; return the exit status."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; one of {COMMANDS}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache_dir = out / ".cache"
    cache_dir.mkdir(exist_ok=True)
    digest_src = json.dumps({
        "command": command,
        "config": cfg.source_text,
        "k": {k: str(v) for k, v in cfg.k_values.items()},
        "truncation": cfg.truncation, "max_dim": cfg.max_dim,
        "n_max": cfg.n_max, "catalog": catalog_path or cfg.catalog_path,
    }, sort_keys=True)
    digest = hashlib.sha256(digest_src.encode()).hexdigest()[:24]
    cache_file = cache_dir / f"{command}-{digest}.json"
    if cache_file.exists():
        text = cache_file.read_text(encoding="utf-8")
        report = json.loads(text)
    else:
        algebra = cfg.build_algebra()
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            if command == "datum":
                report = _cmd_datum(cfg, algebra)
            elif command == "group":
                report = _cmd_group(cfg, algebra)
            elif command == "molien":
                report = _cmd_molien(cfg, algebra)
            elif command == "crossed-census":
                report = _cmd_crossed_census(cfg, algebra)
            elif command == "hp":
                report = _cmd_hp(cfg, algebra)
            elif command == "hh-findim":
                report = _cmd_hh_findim(cfg, algebra)
            elif command == "hc-findim":
                report = _cmd_hc_findim(cfg, algebra)
            elif command == "induce":
                report = _cmd_induce(cfg, algebra)
            elif command == "irr0":
                report = _cmd_irr0(cfg, algebra, catalog_path)
            else:
                report = _cmd_verify_basis(cfg, algebra, catalog_path)
        report = json.loads(_dump(report))
        cache_file.write_text(_dump(report), encoding="utf-8")
    text = _dump(report)
    (out / f"{command}.json").write_text(text, encoding="utf-8")
    if command == "verify-basis":
        import csv
        import io
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for name, row in zip(report["module_names"], report["trace_matrix"]):
            writer.writerow([name] + [str(v) for v in row])
        (out / "verify-basis.csv").write_text(buf.getvalue(), encoding="utf-8")
    status = 0
    if command == "verify-basis" and not report["passed"]:
        status = 2
    print(f"{command}: wrote {out / (command + '.json')}")
    if command == "verify-basis":
        print(f"verify-basis: passed={report['passed']} "
              f"rank={report['matrix_rank']} classes={report['class_count']}")
    return status


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gradedhecke",
        description="Exact censuses for extended graded Hecke algebras.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="config file path")
    parser.add_argument("--out", default="out", help="report directory")
    parser.add_argument("--truncation", type=int, default=None,
                        help="Poincare series truncation order")
    parser.add_argument("--max-dim", type=int, default=None,
                        help="chain-space size bound for bar complexes")
    parser.add_argument("--catalog", default=None,
                        help="discrete-series catalog file")
    parser.add_argument("--k-override", default=None,
                        help="parameter override, e.g. 'alpha1=2,alpha2=2'")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(Path(args.config).read_text(encoding="utf-8"))
        if args.k_override is not None:
            apply_k_override(cfg, args.k_override)
            cfg.source_text += f"\n# k-override {args.k_override}"
        if args.truncation is not None:
            cfg.truncation = args.truncation
        if args.max_dim is not None:
            cfg.max_dim = args.max_dim
        return run(args.command, cfg, out_dir=args.out,
                   catalog_path=args.catalog)
    except SizeBoundExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, RootDatumError, WeylError, ModuleError,
            HomologyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
