"""JSON and CSV formats.

Measure JSON::

    {"atoms": [{"z": 0.25, "lambda": 0.3}, ...],
     "density": null | {"kind": "checkerboard"} | {"kind": "table", "z": [...], "w": [...]}}

Pole/residue JSON::

    {"variable": "s", "pairs": [{"pole": 0.25, "residue": 0.3}, ...]}

Dataset CSV columns: ``omega, re_eps1, im_eps1, re_eps2, im_eps2, re_d, im_d``,
or ``re_s, im_s`` in place of the permittivities.  ``re_F, im_F`` (the
``forward`` output) are accepted in place of ``re_d, im_d``.
"""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .errors import SchemaError
from .inverse import FrequencyDataset, ReconstructionResult, s_from_permittivities
from .measure import SpectralMeasure, checkerboard_density, table_density
from .spectral import PoleResidueForm

FLOAT_FMT = "%.17g"
EPS_COLUMNS = ("re_eps1", "im_eps1", "re_eps2", "im_eps2")
S_COLUMNS = ("re_s", "im_s")
D_COLUMNS = ("re_d", "im_d")
F_COLUMNS = ("re_F", "im_F")


def fmt(x: float) -> str:
    return FLOAT_FMT % x


def measure_to_json(measure: SpectralMeasure) -> dict:
    density = None
    if measure.density is not None:
        kind = measure.density.kind
        if kind == "checkerboard":
            density = {"kind": "checkerboard"}
        elif kind == "table":
            density = {"kind": "table", "z": measure.density.params["z"],
                       "w": measure.density.params["w"]}
        else:
            raise SchemaError(f"density kind {kind!r} has no JSON form")
    return {"atoms": [{"z": a.position, "lambda": a.weight} for a in measure.atoms],
            "density": density}


def measure_from_json(obj: dict) -> SpectralMeasure:
    if not isinstance(obj, dict):
        raise SchemaError("measure JSON must be an object")
    try:
        atoms = tuple((float(a["z"]), float(a["lambda"])) for a in obj.get("atoms", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad atom entry: {exc}") from None
    dens = obj.get("density")
    density = None
    if dens is not None:
        kind = dens.get("kind")
        if kind == "checkerboard":
            density = checkerboard_density()
        elif kind == "table":
            try:
                density = table_density(dens["z"], dens["w"])
            except (KeyError, ValueError) as exc:
                raise SchemaError(f"bad table density: {exc}") from None
        else:
            raise SchemaError(f"unknown density kind {kind!r}")
    try:
        return SpectralMeasure(atoms, density)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def load_measure(path) -> SpectralMeasure:
    with open(path) as fh:
        try:
            return measure_from_json(json.load(fh))
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from None


def save_measure(measure: SpectralMeasure, path):
    with open(path, "w") as fh:
        json.dump(measure_to_json(measure), fh, indent=2)


def poles_to_json(form: PoleResidueForm) -> dict:
    out = {"variable": form.variable,
           "pairs": [{"pole": p, "residue": r} for p, r in form.pairs]}
    if form.constant:
        out["constant"] = form.constant
    return out


def poles_from_json(obj: dict) -> PoleResidueForm:
    try:
        pairs = obj["pairs"]
        poles = [float(p["pole"]) for p in pairs]
        residues = [float(p["residue"]) for p in pairs]
        return PoleResidueForm(poles, residues, obj.get("variable", "s"),
                               float(obj.get("constant", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad pole/residue JSON: {exc}") from None


def result_to_json(result: ReconstructionResult) -> dict:
    out = poles_to_json(result.form)
    out.update({
        "M": result.M,
        "moments": [float(m) for m in result.moments],
        "residual": result.residual,
        "relative_residual": result.relative_residual,
        "converged": result.converged,
        "certificate": {"passed": result.certificate.passed,
                        "failures": list(result.certificate.failures)},
        "point_residuals": [{"re": float(r.real), "im": float(r.imag)}
                            for r in result.point_residuals],
        "start_residuals": list(result.start_residuals),
        "diagnostics": list(result.diagnostics),
    })
    return out


def dataset_to_csv(data: FrequencyDataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    omega = data.omega if data.omega is not None else np.zeros(len(data))
    if data.eps1 is not None:
        writer.writerow(("omega",) + EPS_COLUMNS + D_COLUMNS)
        for w, e1, e2, d in zip(omega, data.eps1, data.eps2, data.d):
            writer.writerow([fmt(v) for v in (w, e1.real, e1.imag, e2.real, e2.imag, d.real, d.imag)])
    else:
        writer.writerow(("omega",) + S_COLUMNS + D_COLUMNS)
        for w, s, d in zip(omega, data.s, data.d):
            writer.writerow([fmt(v) for v in (w, s.real, s.imag, d.real, d.imag)])
    return buf.getvalue()


def write_dataset(data: FrequencyDataset, path):
    with open(path, "w", newline="") as fh:
        fh.write(dataset_to_csv(data))


def write_dataset_with_sidecar(data: FrequencyDataset, path, model, pm1, pm2):
    """CSV at ``path`` plus ``path + '.json'`` describing how it was generated."""
    write_dataset(data, path)
    sidecar = {"model": model.to_json(), "eps1": pm1.to_json(), "eps2": pm2.to_json(),
               "noise_level": data.noise_level, "records": len(data)}
    with open(str(path) + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2)


def dataset_from_csv(text: str, noise_level: float = 0.0) -> FrequencyDataset:
    reader = csv.DictReader(io.StringIO(text))
    cols = set(reader.fieldnames or ())
    if not cols:
        raise SchemaError("CSV is empty")
    d_cols = D_COLUMNS
    if not set(D_COLUMNS) <= cols:
        if not set(F_COLUMNS) <= cols:
            raise SchemaError("CSV needs columns re_d, im_d (or re_F, im_F)")
        d_cols = F_COLUMNS
    use_eps = set(EPS_COLUMNS) <= cols
    if not use_eps and not set(S_COLUMNS) <= cols:
        raise SchemaError("CSV needs re_eps1, im_eps1, re_eps2, im_eps2 or re_s, im_s")
    rows = list(reader)
    if not rows:
        raise SchemaError("CSV has no data rows")
    try:
        def col(name):
            return np.array([float(r[name]) for r in rows])
        d = col(d_cols[0]) + 1j * col(d_cols[1])
        omega = col("omega") if "omega" in cols else None
        if use_eps:
            eps1 = col("re_eps1") + 1j * col("im_eps1")
            eps2 = col("re_eps2") + 1j * col("im_eps2")
            s = np.array([s_from_permittivities(a, b) for a, b in zip(eps1, eps2)])
            return FrequencyDataset(s, d, omega, eps1, eps2, noise_level)
        s = col("re_s") + 1j * col("im_s")
        return FrequencyDataset(s, d, omega, noise_level=noise_level)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed CSV value: {exc}") from None


def read_dataset(path, noise_level: float = 0.0) -> FrequencyDataset:
    with open(path, newline="") as fh:
        return dataset_from_csv(fh.read(), noise_level)
