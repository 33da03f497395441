"""
Command controller: maps a RunConfig onto the services and builds the
report documents the CLI writes out.
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import structlog
from pydantic import BaseModel, ValidationError

from app.core.exceptions import FixtureValidationError
from app.core.linear_algebra import format_scalar, to_scalar
from app.entities.algebra import GaloisContext
from app.entities.order import FreenessCertificate, GStableLattice, OrderLattice
from app.entities.transfer import TransferReport
from app.models.enums import CommandName, ExitCode, OrderAmbient, TheoremVerdict
from app.schemas.fixture_schemas import CertificateDocument, OrderDocument
from app.schemas.report_schemas import (
    CensusEntry,
    CertificateCheck,
    ClaimDocument,
    EnumerateReport,
    HopfOrderReport,
    HopfOrderSide,
    NbgReport,
    NbgRow,
    RunConfig,
    TheoremReportDocument,
    TransferDocument,
    VerifyReport,
)
from app.services.fixture_service import fixture_service
from app.services.group_service import group_service
from app.services.nbg_service import nbg_service
from app.services.order_service import order_service
from app.services.transfer_service import transfer_service

logger = structlog.get_logger()


def _certificate_document(cert: Optional[FreenessCertificate]) -> Optional[CertificateDocument]:
    if cert is None:
        return None
    return CertificateDocument.model_validate(cert.to_document())


def _order_document(order: OrderLattice) -> OrderDocument:
    return OrderDocument.model_validate(order.to_document())


def _transfer_document(report: TransferReport) -> TransferDocument:
    return TransferDocument(
        direction=report.direction,
        input_certificate=_certificate_document(report.input_certificate),
        output_elements=[[format_scalar(x) for x in row] for row in report.output_elements],
        claims=[ClaimDocument(index=c.index, claim=c.claim, holds=c.holds,
                              route_holds=c.route_holds, witness=c.witness) for c in report.claims],
        output_certificate=_certificate_document(report.output_certificate),
        order_matches=report.order_matches,
    )


class CommandController:
    """Runs one CLI command per call."""

    def run(self, config: RunConfig, force_zero: bool = False) -> BaseModel:
        logger.info("Running command", command=config.command.value, fixture=config.fixture)
        if config.command is CommandName.ENUMERATE:
            return self.cmd_enumerate(config)
        if config.command is CommandName.NBG:
            return self.cmd_nbg(config, force_zero=force_zero)
        if config.command is CommandName.THEOREM:
            return self.cmd_theorem(config)
        return self.cmd_hopf_order(config)

    def exit_code(self, report: BaseModel) -> ExitCode:
        if isinstance(report, TheoremReportDocument) and report.verdict is TheoremVerdict.CONTRADICTION:
            return ExitCode.CONTRADICTION
        if isinstance(report, NbgReport) and not report.all_agree:
            return ExitCode.CONTRADICTION
        if isinstance(report, VerifyReport) and not report.all_valid:
            return ExitCode.CONTRADICTION
        return ExitCode.SUCCESS

    # -- commands -----------------------------------------------------------------

    def cmd_enumerate(self, config: RunConfig) -> EnumerateReport:
        G, _ = fixture_service.resolve(config.fixture)
        subgroups = group_service.enumerate_regular_subgroups(G)
        lam = group_service.left_regular(G)
        rho = group_service.right_regular(G)
        entries = [
            CensusEntry(
                index=i,
                images=N.image_vectors(),
                abelian=N.is_abelian(),
                is_lambda=N == lam,
                is_rho=N == rho,
                normalized=group_service.normalizes(N, G),
                regular=group_service.is_regular(N),
                centralizes_lambda=group_service.centralizes(N, lam),
            )
            for i, N in enumerate(subgroups)
        ]
        return EnumerateReport(config=config, group_order=G.order,
                               group_labels=[G.label(g) for g in G.elements()],
                               count=len(entries), entries=entries)

    def cmd_nbg(self, config: RunConfig, force_zero: bool = False) -> NbgReport:
        ctx = fixture_service.resolve_context(config.fixture)
        forced = [ctx.zero_element()] if force_zero else []
        samples = nbg_service.run_samples(ctx, config.seed, config.samples, forced)
        rows = [NbgRow(index=s.index, seed=config.seed, x=s.x.to_document(),
                       verdict_lambda=s.verdict_lambda, verdict_rho=s.verdict_rho, agrees=s.agrees)
                for s in samples]
        agreeing = sum(r.agrees for r in rows)
        return NbgReport(config=config, mode=ctx.mode.value,
                         agreement_rate=format_scalar(Fraction(agreeing, len(rows))),
                         all_agree=agreeing == len(rows), rows=rows)

    def _stable_lattice(self, config: RunConfig) -> Tuple[GaloisContext, GStableLattice]:
        ctx = fixture_service.resolve_context(config.fixture)
        lattice = fixture_service.resolve_lattice(ctx, config.lattice)
        return ctx, order_service.check_g_stable(ctx, lattice)

    def cmd_theorem(self, config: RunConfig) -> TheoremReportDocument:
        ctx, B = self._stable_lattice(config)
        report = transfer_service.theorem_main_check(ctx, B, config.box)
        return TheoremReportDocument(
            config=config,
            verdict=report.verdict,
            box=report.box,
            order_kg=_order_document(report.order_kg),
            order_hlambda=_order_document(report.order_hlambda),
            certificate_kg=_certificate_document(report.found_kg),
            certificate_hlambda=_certificate_document(report.found_hlambda),
            transfers=[_transfer_document(t) for t in report.transfers],
            failure=report.failure,
        )

    def cmd_hopf_order(self, config: RunConfig) -> HopfOrderReport:
        ctx, B = self._stable_lattice(config)
        sides = []
        for order in (order_service.associated_order_kg(ctx, B), order_service.associated_order_hlambda(ctx, B)):
            verdict = order_service.hopf_order_verdict(ctx, order)
            sides.append(HopfOrderSide(ambient=order.ambient.value, order=_order_document(order),
                                       comultiplication=verdict.comultiplication, counit=verdict.counit,
                                       antipode=verdict.antipode, is_hopf=verdict.is_hopf))
        return HopfOrderReport(config=config, sides=sides)

    # -- re-validation ------------------------------------------------------------

    def _parse_certificate(self, ctx: GaloisContext, doc: CertificateDocument) -> FreenessCertificate:
        try:
            return FreenessCertificate(
                generator=ctx.element(doc.generator),
                ambient=OrderAmbient(doc.ambient),
                order_basis=tuple(tuple(to_scalar(x) for x in row) for row in doc.order_basis),
                images=tuple(ctx.element(img) for img in doc.images),
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FixtureValidationError("malformed certificate", identity="certificate", error=str(exc))

    def _collect_certificates(self, report: TheoremReportDocument) -> List[Tuple[str, CertificateDocument]]:
        found: List[Tuple[str, CertificateDocument]] = []
        if report.certificate_kg is not None:
            found.append(("search:kg", report.certificate_kg))
        if report.certificate_hlambda is not None:
            found.append(("search:hlambda", report.certificate_hlambda))
        for t in report.transfers:
            if t.output_certificate is not None:
                found.append((f"transfer:{t.direction.value}", t.output_certificate))
        return found

    def verify_only(self, report_path: str) -> VerifyReport:
        """Re-validate every certificate in a theorem report against freshly computed orders."""
        raw: Dict[str, Any] = fixture_service.read_json(report_path)
        try:
            report = TheoremReportDocument.model_validate(raw)
        except ValidationError as exc:
            raise FixtureValidationError("file is not a theorem report", identity="report_schema",
                                         path=report_path, errors=exc.error_count())
        ctx, B = self._stable_lattice(report.config)
        orders = {
            OrderAmbient.GROUP_ALGEBRA: order_service.associated_order_kg(ctx, B),
            OrderAmbient.HOPF_LAMBDA: order_service.associated_order_hlambda(ctx, B),
        }
        results = []
        for source, doc in self._collect_certificates(report):
            cert = self._parse_certificate(ctx, doc)
            valid = order_service.revalidate_certificate(ctx, orders[cert.ambient], B, cert)
            if not valid:
                logger.error("Certificate failed re-validation", source=source, ambient=cert.ambient.value)
            results.append(CertificateCheck(source=source, ambient=cert.ambient.value, valid=valid))
        logger.info("Certificates re-validated", path=report_path, checked=len(results))
        return VerifyReport(report_path=report_path, fixture=report.config.fixture,
                            lattice=report.config.lattice, checked=len(results),
                            all_valid=all(r.valid for r in results), results=results)

    # -- markdown -----------------------------------------------------------------

    def render_markdown(self, report: BaseModel) -> str:
        if isinstance(report, EnumerateReport):
            lines = self._header("Regular subgroups normalized by λ(G)", report.config)
            lines += [f"Group order: {report.group_order}; census size: {report.count}", "",
                      "| # | abelian | λ | ρ | normalized | regular | centralizes λ |",
                      "|---|---|---|---|---|---|---|"]
            lines += [f"| {e.index} | {_yes(e.abelian)} | {_yes(e.is_lambda)} | {_yes(e.is_rho)} | "
                      f"{_yes(e.normalized)} | {_yes(e.regular)} | {_yes(e.centralizes_lambda)} |"
                      for e in report.entries]
        elif isinstance(report, NbgReport):
            lines = self._header("Normal basis generators over H_λ and K[G]", report.config)
            lines += [f"Mode: {report.mode}; agreement rate: {report.agreement_rate}", "",
                      "| # | x | λ | ρ | agrees |", "|---|---|---|---|---|"]
            lines += [f"| {r.index} | ({', '.join(r.x)}) | {_yes(r.verdict_lambda)} | "
                      f"{_yes(r.verdict_rho)} | {_yes(r.agrees)} |" for r in report.rows]
        elif isinstance(report, TheoremReportDocument):
            lines = self._header("Freeness over K[G] and H_λ", report.config)
            lines += [f"Verdict: **{report.verdict.value}** (box {report.box})", ""]
            for name, cert in (("K[G]", report.certificate_kg), ("H_λ", report.certificate_hlambda)):
                found = f"({', '.join(cert.generator)})" if cert else "none within box"
                lines.append(f"- generator over {name}: {found}")
            for t in report.transfers:
                passed = sum(c.holds and c.route_holds is not False for c in t.claims)
                lines.append(f"- transfer {t.direction.value}: {passed}/{len(t.claims)} claims hold, "
                             f"order basis matches: {_yes(bool(t.order_matches))}")
            if report.failure:
                lines += ["", f"Failure: {report.failure}"]
        elif isinstance(report, HopfOrderReport):
            lines = self._header("Hopf orders", report.config)
            lines += ["| ambient | comultiplication | counit | antipode | Hopf order |",
                      "|---|---|---|---|---|"]
            lines += [f"| {s.ambient} | {_yes(s.comultiplication)} | {_yes(s.counit)} | "
                      f"{_yes(s.antipode)} | {_yes(s.is_hopf)} |" for s in report.sides]
        elif isinstance(report, VerifyReport):
            lines = ["# Certificate re-validation", "", f"Report: `{report.report_path}`", "",
                     "| source | ambient | valid |", "|---|---|---|"]
            lines += [f"| {r.source} | {r.ambient} | {_yes(r.valid)} |" for r in report.results]
        else:
            raise TypeError(f"no markdown rendering for {type(report).__name__}")
        return "\n".join(lines) + "\n"

    def _header(self, title: str, config: RunConfig) -> List[str]:
        return [f"# {title}", "",
                f"Command `{config.command.value}`, fixture `{config.fixture}`, lattice `{config.lattice}`, "
                f"seed {config.seed}, samples {config.samples}, box {config.box}", ""]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


command_controller = CommandController()
