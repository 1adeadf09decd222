"""
Output formatting for pcw
"""

import json
import sys
from typing import Any, Dict, List

import click

from .config import Config
from .kernel import CheckReport, Proof, SearchResult, encode_proof
from .models import Verdict


class OutputFormatter:
    """Render proofs, reports, search results and models as text or JSON"""

    def __init__(self, config: Config):
        self.config = config

    @property
    def use_color(self) -> bool:
        mode = self.config.output.color
        if mode == 'auto':
            return sys.stdout.isatty()
        return mode == 'always'

    def _style(self, text: str, ok: bool) -> str:
        if not self.use_color:
            return text
        return click.style(text, fg='green' if ok else 'red')

    def _json(self, data: Any) -> str:
        if self.config.output.pretty:
            return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)
        return json.dumps(data, sort_keys=True, ensure_ascii=False)

    @property
    def json_mode(self) -> bool:
        return self.config.output.format == 'json'

    # Proofs

    def proof_lines(self, proof: Proof, depth: int = 0) -> List[str]:
        """Indented rule tree, conclusion first"""
        rule = proof.rule if not proof.is_open else self._style('open', False)
        lines = [f"{'  ' * depth}[{rule}] {proof.conclusion.text}"]
        for p in proof.premises:
            lines.extend(self.proof_lines(p, depth + 1))
        return lines

    def format_proof(self, proof: Proof, calculus: str = '') -> str:
        if self.json_mode:
            data: Dict[str, Any] = {'proof': encode_proof(proof)}
            if calculus:
                data['calculus'] = calculus
            return self._json(data)
        return '\n'.join(self.proof_lines(proof))

    def format_report(self, report: CheckReport, calculus: str = '') -> str:
        if self.json_mode:
            data = report.to_dict()
            if calculus:
                data['calculus'] = calculus
            return self._json(data)
        if report.ok:
            return self._style(f"ok: proof checks in {calculus}".rstrip(), True)
        lines = [self._style(f"failed: {len(report.failures)} node(s) do not check", False)]
        for path, reason in report.failures:
            where = '.'.join(str(i) for i in path) or 'root'
            lines.append(f"  at {where}: {reason}")
        return '\n'.join(lines)

    def format_translation(self, proof: Proof, report: CheckReport, route: List[str]) -> str:
        if self.json_mode:
            return self._json({'route': route, 'proof': encode_proof(proof),
                               'check': report.to_dict()})
        head = ' -> '.join(route)
        return '\n'.join([head] + self.proof_lines(proof)
                         + [self.format_report(report, route[-1])])

    def format_search(self, result: SearchResult, calculus: str) -> str:
        if self.json_mode:
            data: Dict[str, Any] = {'calculus': calculus, 'status': result.status,
                                    'explored': result.explored, 'depth': result.depth}
            if result.proof is not None:
                data['proof'] = encode_proof(result.proof)
            elif result.derivation is not None:
                data['derivation'] = encode_proof(result.derivation)
            return self._json(data)
        if result.proof is not None:
            return '\n'.join(self.proof_lines(result.proof))
        verdict = 'no proof' if result.status == 'open' else 'search exhausted'
        lines = [self._style(f"{verdict} in {calculus} (depth {result.depth}, "
                             f"{result.explored} nodes)", False)]
        if result.derivation is not None:
            lines.extend(self.proof_lines(result.derivation, 1))
        return '\n'.join(lines)

    # Models

    def model_lines(self, model: Dict[str, Any]) -> List[str]:
        """Adjacency list and valuation table"""
        lines = [f"model ({model.get('kind', 'unknown')})"]
        if 'edges' in model:
            for w, succ in model['edges'].items():
                lines.append(f"  {w} -> {', '.join(str(u) for u in succ) or '-'}")
        if 'spheres' in model:
            for w, system in model['spheres'].items():
                spheres = ' '.join('{' + ', '.join(str(u) for u in s) + '}' for s in system)
                lines.append(f"  S({w}) = {spheres or '-'}")
        if 'mult' in model:
            lines.append(f"  carrier {model['carrier']} units {model['units']}")
            lines.append(f"  mult {model['mult']}")
            lines.append(f"  add {model['add']}")
            lines.append(f"  order {model['order']}")
        if 'worlds' in model and 'edges' not in model and 'spheres' not in model:
            lines.append(f"  worlds {model['worlds']}")
        for p, worlds in model.get('valuation', {}).items():
            lines.append(f"  {p}: {', '.join(str(w) for w in worlds) or '-'}")
        return lines

    def format_verdict(self, verdict: Verdict, formula: str) -> str:
        if self.json_mode:
            data = verdict.to_dict()
            data['formula'] = formula
            return self._json(data)
        if verdict.valid:
            return self._style(f"valid up to {verdict.bound} world(s) "
                               f"({verdict.checked} models): {formula}", True)
        lines = [self._style(f"countermodel for {formula} at world {verdict.world}", False)]
        if verdict.countermodel is not None:
            lines.extend(self.model_lines(verdict.countermodel.to_dict()))
        return '\n'.join(lines)

    def format_valuation(self, valuation: Dict[str, bool], formula: str) -> str:
        if self.json_mode:
            return self._json({'formula': formula, 'verdict': 'countermodel',
                               'valuation': valuation})
        lines = [self._style(f"countermodel for {formula}", False)]
        lines += [f"  {p} = {'true' if v else 'false'}" for p, v in valuation.items()]
        return '\n'.join(lines)

    def format_data(self, data: Any) -> str:
        if self.json_mode:
            return self._json(data)
        if isinstance(data, dict):
            return '\n'.join(f"{k}: {v}" for k, v in sorted(data.items()))
        if isinstance(data, list):
            return '\n'.join(str(item) for item in data)
        return str(data)

    # Streams

    def output_result(self, text: str) -> None:
        """Output a rendered result to stdout"""
        click.echo(text)
        sys.stdout.flush()

    def output_error(self, error: str) -> None:
        """Output an error message to stderr"""
        if not self.config.quiet:
            click.echo(f"Error: {error}", err=True)

    def output_info(self, info: str) -> None:
        """Output an info message to stderr (if not quiet)"""
        if not self.config.quiet:
            click.echo(info, err=True)

    def output_verbose(self, info: str) -> None:
        """Output a verbose message to stderr (if verbose mode)"""
        if self.config.verbose:
            click.echo(f"[VERBOSE] {info}", err=True)
