"""
The analyses behind the management commands.

Each ``run_*`` function takes a :class:`RunContext`, writes its artifacts
and returns an :class:`Outcome`. ``run_verify_all`` is the conjunction of
all of them.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

from . import af_core, ktheory, measures
from .clopen import CylinderCalculus
from .conf import get_setting
from .labeled_space import LabeledSpace
from .language import (
    InsufficientOccurrences,
    complexity,
    complexity_witness,
    disagreeability_certificate,
    factors,
    overlap_witness,
)
from .reports import ArtifactWriter, result_payload
from .results import CheckResult, combine
from .seqgen import MorseProduct, window_period

logger = logging.getLogger(__name__)

AGREEMENT_TOLERANCE = 1e-3
RECURRENCE_LENGTH = 8
OVERLAP_BLOCK = 6
CONDITION_TERMS = 32


@dataclass(frozen=True)
class Outcome:
    name: str
    passed: bool
    artifacts: tuple = ()
    witness: tuple | None = None
    detail: dict = field(default_factory=dict, compare=False)

    def failure(self):
        return {"command": self.name, "witness": self.witness, "detail": self.detail}


class RunContext:
    """Lazily built objects shared by the analyses of one run."""

    def __init__(self, config):
        self.config = config.validate()
        self.writer = ArtifactWriter(config.output_dir, config.formats)

    @cached_property
    def window(self):
        return self.config.source.window(self.config.window)

    @cached_property
    def table(self):
        return factors(self.window, self.config.depth)

    @cached_property
    def space(self):
        return LabeledSpace(self.table)

    @cached_property
    def calculus(self):
        return CylinderCalculus(self.table)

    @cached_property
    def morse_certificate(self):
        source = self.config.source
        if not isinstance(source, MorseProduct):
            return None
        return source.language_certificate(self.config.window, get_setting("CERTIFICATE_LENGTH"))

    @cached_property
    def measure_depth(self):
        config = self.config
        return max(
            config.frequency_depth,
            config.shift_length + 1,
            2 * config.trace_length,
            2 * config.bratteli_levels,
        )

    @cached_property
    def exact_measure(self):
        try:
            return measures.exact_measure(
                self.config.source, self.measure_depth, self.config.window
            )
        except measures.NotUniquelyCertified:
            logger.info("no certified measure for %s", self.config.source.describe())
            return None

    @cached_property
    def empirical_measure(self):
        return measures.empirical_frequencies(self.window, self.measure_depth)

    @cached_property
    def measure(self):
        return self.exact_measure or self.empirical_measure

    def header(self, command):
        return {"command": command, "config": self.config.as_dict()}


def _outcome(ctx, name, result, artifacts=(), **detail):
    if not result.passed:
        logger.warning("%s failed: %s", name, result.witness)
    return Outcome(
        name,
        result.passed,
        tuple(str(path) for path in artifacts),
        result.witness,
        {**detail, "result": result_payload(result)},
    )


def _morse_payload(ctx):
    source, certificate = ctx.config.source, ctx.morse_certificate
    spec = source.spec
    terms = CONDITION_TERMS if spec.cycle else len(spec.blocks)
    return {
        "language_certificate": certificate,
        "condition_sum": {"terms": terms, "value": source.condition_sum(terms)},
    }


def run_gen(ctx):
    window = ctx.window
    certificate = ctx.morse_certificate
    payload = {
        **ctx.header("gen"),
        "size": window.size,
        "period": window_period(window),
        "window": str(window),
    }
    if certificate is not None:
        payload.update(_morse_payload(ctx))
    artifacts = ctx.writer.json("window", payload)
    if certificate is None or certificate.passed:
        result = CheckResult("gen", True, len(window))
    else:
        result = CheckResult("gen", False, len(window), certificate.witness)
    return _outcome(ctx, "gen", result, artifacts)


def run_lang(ctx):
    table = ctx.table
    depth = table.max_len
    payload = {
        **ctx.header("lang"),
        "complexity": {n: complexity(table, n) for n in range(1, depth + 1)},
        "factor_closed": table.is_factor_closed(),
        "complexity_witness": complexity_witness(table),
        "short_words": {n: table.words(n) for n in range(1, min(depth, 4) + 1)},
    }
    if depth >= 2 * OVERLAP_BLOCK + 1:
        payload["overlap_witness"] = overlap_witness(table, OVERLAP_BLOCK)
    if ctx.morse_certificate is not None:
        payload["language_certificate"] = ctx.morse_certificate
    artifacts = ctx.writer.json("language", payload)
    artifacts += ctx.writer.csv(
        "language", ("word", "length", "count", "first", "last", "max_gap"), table.rows()
    )
    closed = payload["factor_closed"]
    result = CheckResult("lang", closed, depth, None if closed else ("factor-closure",))
    return _outcome(ctx, "lang", result, artifacts)


def run_recurrence(ctx):
    table = ctx.table
    gaps, witness, checked = {}, None, 0
    for n in range(1, min(RECURRENCE_LENGTH, table.max_len) + 1):
        for word in table.words(n):
            checked += 1
            try:
                report = table.recurrence(word)
            except InsufficientOccurrences:
                witness = witness or (word,)
                continue
            gaps[word] = {"max_gap": report.max_gap, "occurrences": report.occurrences}
    payload = {**ctx.header("recurrence"), "gaps": gaps, "window_relative": True}
    artifacts = ctx.writer.json("recurrence", payload)
    result = CheckResult("recurrence", witness is None, checked, witness)
    return _outcome(ctx, "recurrence", result, artifacts)


def run_disagree(ctx):
    config = ctx.config
    report = disagreeability_certificate(ctx.table, config.disagree_length, config.power_ceiling)
    payload = {**ctx.header("disagree"), "report": report}
    artifacts = ctx.writer.json("disagree", payload)
    result = CheckResult(
        "disagree",
        report.passed,
        len(report.powers),
        None if report.passed else (report.witness,),
        {"max_power": max(report.powers.values())},
    )
    return _outcome(ctx, "disagree", result, artifacts)


def run_axioms(ctx):
    reports = ctx.space.verify_axioms(ctx.config.axiom_level)
    results = [
        CheckResult(
            f"{report.axiom}@{report.level}",
            report.passed,
            report.checked,
            None if report.passed else report.counterexample,
        )
        for report in reports
    ]
    result = combine("axioms", results)
    payload = {**ctx.header("axioms"), "reports": reports}
    artifacts = ctx.writer.json("axioms", payload)
    return _outcome(ctx, "axioms", result, artifacts)


def run_cofinal(ctx):
    results, certificates = [], []
    for word in ctx.config.cofinal_words:
        if ctx.config.cofinal_length is not None:
            length = ctx.config.cofinal_length
        else:
            length = ctx.table.recurrence(word).max_gap + len(word)
        certificate = ctx.space.strong_cofinality_certificate(word, length)
        certificates.append(certificate)
        results.append(
            CheckResult(
                f"cofinal-{word}",
                certificate.passed,
                len(certificate.entries),
                None if certificate.passed else (word, certificate.witness),
            )
        )
    result = combine("cofinal", results)
    payload = {**ctx.header("cofinal"), "certificates": certificates}
    artifacts = ctx.writer.json("cofinal", payload)
    return _outcome(ctx, "cofinal", result, artifacts)


def run_bratteli(ctx):
    diagram = af_core.build_bratteli(ctx.table, ctx.config.bratteli_levels)
    results = [af_core.verify_structure(diagram, ctx.table)]
    if ctx.exact_measure is not None:
        results.append(af_core.measure_compatibility(diagram, ctx.exact_measure))
    result = combine("bratteli", results)
    payload = {
        **ctx.header("bratteli"),
        "levels": {k: diagram.level(k) for k in range(1, diagram.levels + 1)},
        "edges": diagram.edge_count(),
    }
    if diagram.levels >= 2:
        payload["dimension_data"] = af_core.dimension_data(diagram)
    artifacts = ctx.writer.json("bratteli", payload)
    artifacts += ctx.writer.dot("bratteli", af_core.export_dot(diagram))
    return _outcome(ctx, "bratteli", result, artifacts)


def run_clopen(ctx):
    length = ctx.config.tprime_length
    calculus = ctx.calculus
    results = [
        calculus.verify_tprime(length),
        calculus.verify_conjugation_law(length),
        *(calculus.t_generator(a, min(length, ctx.table.max_len - 1)) for a in ctx.table.words(1)),
    ]
    result = combine("clopen", results)
    payload = {**ctx.header("clopen"), "checks": [result_payload(r) for r in results]}
    artifacts = ctx.writer.json("clopen", payload)
    return _outcome(ctx, "clopen", result, artifacts)


def run_phi(ctx):
    first, last = ctx.config.phi_levels
    table = ctx.table
    naturality_last = min(last - 2, table.max_len - 2)
    result = ktheory.verify_levels(table, first, last, naturality_last)
    payload = {
        **ctx.header("phi"),
        "levels": [ktheory.level_report(table, level) for level in range(first, last + 1)],
        "naturality_levels": [first, naturality_last],
        "truncation": True,
    }
    artifacts = ctx.writer.json("phi", payload)
    return _outcome(ctx, "phi", result, artifacts)


def run_k(ctx):
    first, last = ctx.config.k0_levels
    result = ktheory.k0_stabilization(ctx.table, first, last)
    payload = {**ctx.header("k"), "k0": result_payload(result)}
    artifacts = ctx.writer.json("k0", payload)
    return _outcome(ctx, "k", result, artifacts)


def run_freq(ctx):
    measure = ctx.measure
    exact = ctx.exact_measure
    scanned = len(ctx.window) >= get_setting("MIN_EMPIRICAL_WINDOW")
    empirical = ctx.empirical_measure if scanned else None
    depth = ctx.config.frequency_depth
    results = []
    for n in range(1, depth + 1):
        total = measure.normalization(n)
        results.append(
            CheckResult(
                f"normalization-{n}",
                abs(total - 1) <= measure.tolerance,
                1,
                None if abs(total - 1) <= measure.tolerance else (n,),
            )
        )
    defect = measure.kolmogorov_defect(depth)
    results.append(
        CheckResult(
            "kolmogorov",
            defect <= measure.tolerance,
            1,
            None if defect <= measure.tolerance else (str(defect),),
            {"defect": defect},
        )
    )
    results.append(measures.shift_invariance_check(measure, ctx.config.shift_length))
    agreement = None
    if exact is not None and empirical is not None:
        agreement = max(
            abs(float(exact(word)) - float(empirical(word)))
            for n in range(1, depth + 1)
            for word in set(exact.words(n)) | set(empirical.words(n))
        )
        results.append(
            CheckResult(
                "agreement",
                agreement <= AGREEMENT_TOLERANCE,
                1,
                None if agreement <= AGREEMENT_TOLERANCE else (agreement,),
            )
        )
    result = combine("freq", results)
    payload = {
        **ctx.header("freq"),
        "mode": measure.mode,
        "measure_dependent": exact is None,
        "tolerance": measure.tolerance,
        "scan_length": empirical.scan_length if empirical else None,
        "agreement": agreement,
        "checks": [result_payload(r) for r in results],
    }
    artifacts = ctx.writer.json("frequencies", payload)
    if exact is not None and empirical is not None:
        header = ("word", "exact", "empirical", "defect")
        rows = exact.rows(empirical)
    else:
        header = ("word", measure.mode)
        rows = measure.rows()
    artifacts += ctx.writer.csv("frequencies", header, rows)
    return _outcome(ctx, "freq", result, artifacts)


def run_trace(ctx):
    result = measures.trace_report(ctx.measure, ctx.config.trace_length)
    payload = {**ctx.header("trace"), "trace": result_payload(result)}
    artifacts = ctx.writer.json("trace", payload)
    return _outcome(ctx, "trace", result, artifacts)


COMMANDS = {
    "gen": run_gen,
    "lang": run_lang,
    "recurrence": run_recurrence,
    "disagree": run_disagree,
    "axioms": run_axioms,
    "cofinal": run_cofinal,
    "bratteli": run_bratteli,
    "clopen": run_clopen,
    "phi": run_phi,
    "k": run_k,
    "freq": run_freq,
    "trace": run_trace,
}


def run_verify_all(ctx):
    outcomes = [run(ctx) for run in COMMANDS.values()]
    artifacts = tuple(path for outcome in outcomes for path in outcome.artifacts)
    failed = next((outcome for outcome in outcomes if not outcome.passed), None)
    summary = {outcome.name: outcome.passed for outcome in outcomes}
    payload = {**ctx.header("verify_all"), "verdicts": summary, "passed": failed is None}
    artifacts += tuple(str(path) for path in ctx.writer.json("verify_all", payload))
    logger.info("verify_all: %s", "pass" if failed is None else f"fail ({failed.name})")
    return Outcome(
        "verify_all",
        failed is None,
        artifacts,
        None if failed is None else (failed.name, *(failed.witness or ())),
        {"verdicts": summary, "failures": [o.failure() for o in outcomes if not o.passed]},
    )
