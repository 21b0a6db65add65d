"""YAML model files: a chart, an optional algebroid or model, and named objects.

    chart: [x, y]
    algebroid:
      rank: 2
      anchor:                 # row a lists the Dx^i components of rho(e_a)
        - ["1", "0"]
        - ["0", "1"]
      brackets:               # "a,b": coefficients of [e_a, e_b] (1-based)
        "1,2": ["0", "0"]
    model:
      cotangent: 1            # or bialgebra: {dim, brackets, cobrackets}
    objects:
      P: {kind: multivector, degree: 2, terms: [{coeff: "1", frame: [Dq, Dp]}]}
      a: {kind: form, text: "q*p*dq", multiplicative: true}   # expected answer
    pairs:                    # characteristic pairs (cp) or IM forms (im)
      c: {type: cp, k: 1, theta: th, values: [m1, m2]}

With a cotangent model the chart is the model chart (q, p coordinates);
kinds are form, multivector, split-form and split-multivector.
"""

from dataclasses import dataclass, field
from typing import Optional

import yaml

from .algebroid import AlgebroidChart, CharacteristicPair, IMForm, cp_check, im_check, validate_algebroid
from .bialgebra import LieBialgebra, bialgebra_suite
from .errors import GpdcalcError, ModelFileError
from .exterior import covector_frame, element_from_terms, parse_element, vector_frame
from .models import CotangentModel, is_multiplicative_form, is_multiplicative_multivector
from .poly import Chart, parse_poly
from .report import VerificationReport

KINDS = ("form", "multivector", "split-form", "split-multivector")
A_WELLFORMED = "model-file/object"
A_MULTIPLICATIVE = "tstar/multiplicativity"


@dataclass
class ObjectEntry:
    name: str
    kind: str
    element: object
    multiplicative: Optional[bool] = None  # expected answer of the multiplicativity test


@dataclass
class LoadedModel:
    chart: Chart
    algebroid: Optional[AlgebroidChart] = None
    cotangent: Optional[CotangentModel] = None
    bialgebra: Optional[LieBialgebra] = None
    objects: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)

    def get(self, name):
        if name not in self.objects:
            raise ModelFileError(f"object not found: {name}")
        return self.objects[name]


def _pair_key(key, what):
    try:
        a, b = (int(s) - 1 for s in str(key).split(","))
    except ValueError:
        raise ModelFileError(f"{what} key {key!r} must look like \"1,2\"") from None
    return a, b


def _poly(text, chart, where):
    try:
        return parse_poly(str(text), chart)
    except GpdcalcError as exc:
        raise ModelFileError(f"{where}: {exc}") from None


def _load_algebroid(spec, chart):
    if not isinstance(spec, dict) or "rank" not in spec:
        raise ModelFileError("algebroid needs a rank")
    r = int(spec["rank"])
    rows = spec.get("anchor") or [[0] * len(chart)] * r
    anchor = [[_poly(x, chart, f"anchor row {a + 1}") for x in row] for a, row in enumerate(rows)]
    brackets = {}
    for key, vals in (spec.get("brackets") or {}).items():
        a, b = _pair_key(key, "bracket")
        if not (0 <= a < r and 0 <= b < r):
            raise ModelFileError(f"bracket key {key!r} out of range")
        cs = [_poly(x, chart, f"bracket {key}") for x in vals]
        if a > b:
            a, b, cs = b, a, [-c for c in cs]
        brackets[(a, b)] = cs
    try:
        return AlgebroidChart(chart, r, anchor, brackets)
    except (GpdcalcError, ValueError) as exc:
        raise ModelFileError(f"algebroid: {exc}") from None


def _load_bialgebra(spec):
    m = int(spec.get("dim", 0))
    brackets = {}
    for key, vals in (spec.get("brackets") or {}).items():
        brackets[_pair_key(key, "bracket")] = vals
    cobrackets = {}
    for i, table in (spec.get("cobrackets") or {}).items():
        cobrackets[int(i) - 1] = {_pair_key(k, "cobracket"): v for k, v in table.items()}
    try:
        return LieBialgebra(m, brackets, cobrackets, name=str(spec.get("name", "model")))
    except (GpdcalcError, ValueError) as exc:
        raise ModelFileError(f"bialgebra: {exc}") from None


def _frame(model, kind):
    if kind not in KINDS:
        raise ModelFileError(f"unknown object kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind.startswith("split"):
        if model.algebroid is None:
            raise ModelFileError(f"kind {kind} needs an algebroid section")
        return model.algebroid.split_covectors if kind == "split-form" else model.algebroid.split_vectors
    return covector_frame(model.chart) if kind == "form" else vector_frame(model.chart)


def _load_object(model, name, spec):
    if not isinstance(spec, dict):
        raise ModelFileError(f"object {name}: expected a mapping")
    kind = spec.get("kind", "form")
    frame = _frame(model, kind)
    degree = spec.get("degree")
    try:
        if "text" in spec:
            el = parse_element(str(spec["text"]), frame, None if degree is None else int(degree))
        else:
            if degree is None:
                raise ModelFileError(f"object {name}: terms need a declared degree")
            terms = []
            for t in spec.get("terms") or []:
                coeff = _poly(t.get("coeff", "1"), model.chart, f"object {name}")
                terms.append((coeff, [str(x) for x in t.get("frame") or []]))
            el = element_from_terms(frame, int(degree), terms)
    except KeyError as exc:
        raise ModelFileError(f"object {name}: unknown frame label {exc.args[0]}") from None
    except ModelFileError:
        raise
    except GpdcalcError as exc:
        raise ModelFileError(f"object {name}: {exc}") from None
    expected = spec.get("multiplicative")
    return ObjectEntry(name, kind, el, None if expected is None else bool(expected))


def _load_pair(model, name, spec):
    A = model.algebroid
    if A is None:
        raise ModelFileError(f"pair {name} needs an algebroid section")
    kind = spec.get("type")
    if kind not in ("cp", "im"):
        raise ModelFileError(f"pair {name}: type must be cp or im")
    theta = model.get(spec.get("theta", "")).element
    values = tuple(model.get(v).element for v in spec.get("values") or [])
    base = covector_frame(model.chart)
    values = tuple(v if v.frame == base else None for v in values)
    if any(v is None for v in values):
        raise ModelFileError(f"pair {name}: values must be forms on the chart")
    try:
        cls = CharacteristicPair if kind == "cp" else IMForm
        return cls(A, int(spec.get("k", theta.degree)), theta, values)
    except (GpdcalcError, ValueError) as exc:
        raise ModelFileError(f"pair {name}: {exc}") from None


def load_model(source):
    """Load a model from YAML text or a mapping; raises ModelFileError."""
    if isinstance(source, str):
        try:
            data = yaml.safe_load(source)
        except yaml.YAMLError as exc:
            raise ModelFileError(f"not valid YAML: {exc}") from None
    else:
        data = source
    data = data or {}
    if not isinstance(data, dict):
        raise ModelFileError("model file must be a mapping")
    mspec = data.get("model") or {}
    cot = None
    if "cotangent" in mspec:
        cot = CotangentModel(int(mspec["cotangent"]))
        chart = cot.chart
        if "chart" in data and tuple(data["chart"]) != chart.coordinates:
            raise ModelFileError(f"a cotangent model has chart {list(chart.coordinates)}")
    else:
        coords = data.get("chart")
        if coords is None and "bialgebra" in mspec:
            coords = []
        elif not coords:
            raise ModelFileError("missing chart section")
        try:
            chart = Chart(tuple(str(c) for c in coords))
        except (GpdcalcError, ValueError) as exc:
            raise ModelFileError(f"chart: {exc}") from None
    model = LoadedModel(chart, cotangent=cot)
    if data.get("algebroid") is not None:
        model.algebroid = _load_algebroid(data["algebroid"], chart)
    if "bialgebra" in mspec:
        model.bialgebra = _load_bialgebra(mspec["bialgebra"] or {})
    for name, spec in (data.get("objects") or {}).items():
        model.objects[str(name)] = _load_object(model, str(name), spec)
    for name, spec in (data.get("pairs") or {}).items():
        model.pairs[str(name)] = _load_pair(model, str(name), spec)
    return model


def load_model_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc.strerror}") from None
    return load_model(text)


def check_model(model):
    """Validate everything a model file declares."""
    rep = VerificationReport("check")
    for name, obj in model.objects.items():
        rep.add("object-wellformed", A_WELLFORMED, True, object=name)
        if obj.multiplicative is not None:
            if model.cotangent is None:
                rep.add("multiplicative", A_MULTIPLICATIVE, False, object=name, reason="needs a cotangent model")
                continue
            test = is_multiplicative_form if obj.kind == "form" else is_multiplicative_multivector
            res = test(model.cotangent, obj.element)
            rep.add("multiplicative", A_MULTIPLICATIVE, res.ok == obj.multiplicative, object=name,
                    expected=obj.multiplicative, reason=res.witness)
    if model.algebroid is not None:
        rep.extend(validate_algebroid(model.algebroid))
    for name, pair in model.pairs.items():
        r = cp_check(pair) if isinstance(pair, CharacteristicPair) else im_check(pair)
        rep.extend(r, prefix=f"{name}.")
    if model.bialgebra is not None:
        rep.extend(bialgebra_suite(model.bialgebra))
    return rep
