"""Parse polynomial text such as ``"t^3+a*t+1"`` or ``"(-5*a^3 - 8)/16"``.

Python's ``ast`` does the tokenizing; ``^`` is accepted as a power operator.
Division is allowed only by expressions that are free of ``t`` and whose
numerator factors into declared atoms.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .exact_algebra import AlgebraError, LaurentPoly, ParamFrac


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int, token: str = ""):
        self.text = text
        self.position = position
        self.token = token
        where = f" at position {position}" + (f" (token {token!r})" if token else "")
        super().__init__(f"{message}{where} in {text!r}")


_NAME_ALIASES = {"β": "beta"}


def _prepare(text: str):
    # ^ -> ** ; keep a map from prepared offsets back to the original text
    out, back = [], []
    for i, ch in enumerate(text):
        if ch == "^":
            out.append("**")
            back.extend([i, i])
        else:
            out.append(_NAME_ALIASES.get(ch, ch))
            back.extend([i] * len(out[-1]))
    back.append(len(text))
    return "".join(out), back


def _token_at(text: str, pos: int) -> str:
    if pos >= len(text):
        return ""
    j = pos
    if text[j].isalnum() or text[j] == "_":
        while j < len(text) and (text[j].isalnum() or text[j] == "_"):
            j += 1
        return text[pos:j]
    return text[pos]


def parse_laurent(text: str, var: str = "t") -> LaurentPoly:
    src, back = _prepare(text.strip())
    orig = text.strip()
    if not orig:
        raise ParseError("empty expression", orig, 0)
    if orig[-1] in "+-*/^(":
        raise ParseError("expression ends with an operator", orig, len(orig) - 1, orig[-1])
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        off = max((exc.offset or 1) - 1, 0)
        pos = back[min(off, len(back) - 1)]
        raise ParseError("syntax error", orig, pos, _token_at(orig, pos)) from None

    def err(node, msg):
        pos = back[min(getattr(node, "col_offset", 0), len(back) - 1)]
        raise ParseError(msg, orig, pos, _token_at(orig, pos))

    def ev(node) -> LaurentPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                err(node, "only integer literals are allowed")
            return LaurentPoly.const(node.value)
        if isinstance(node, ast.Name):
            if node.id == var:
                return LaurentPoly.monomial(1)
            return LaurentPoly.const(ParamFrac.var(node.id))
        if isinstance(node, ast.UnaryOp):
            v = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            err(node, "unsupported unary operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = _int_exponent(node.right)
                if e is None:
                    err(node.right, "exponent must be an integer literal")
                base = ev(node.left)
                try:
                    return base**e
                except AlgebraError as exc:
                    err(node, str(exc))
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.is_zero():
                    err(node.right, "division by zero")
                if right.is_monomial() and right.min_exp() != 0:
                    ((k, c),) = right.coeffs.items()
                    try:
                        return left.shift(-k) / c
                    except AlgebraError as exc:
                        err(node.right, str(exc))
                if set(right.coeffs) != {0}:
                    err(node.right, f"cannot divide by a polynomial in {var}")
                try:
                    return left / right.coeff(0)
                except AlgebraError as exc:
                    err(node.right, str(exc))
            err(node, "unsupported operator")
        err(node, "unsupported syntax")

    return ev(tree)


def _int_exponent(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _int_exponent(node.operand)
        if inner is None:
            return None
        return -inner if isinstance(node.op, ast.USub) else inner
    return None


def parse_scalar(text: str) -> ParamFrac:
    """Parse a t-free expression into a ParamFrac."""
    p = parse_laurent(text, var="\0")
    if p.is_zero():
        return ParamFrac.zero()
    if set(p.coeffs) != {0}:
        raise ParseError("expected a scalar expression", text, 0)
    return p.coeff(0)


def parse_rational(text: str) -> Fraction:
    v = parse_scalar(text)
    if not v.is_constant():
        raise ParseError("expected a rational number", text, 0)
    return v.constant_value()
