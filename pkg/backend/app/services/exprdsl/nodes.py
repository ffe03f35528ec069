from __future__ import annotations

"""Expression tree. Nodes are frozen; equality is structural."""
from dataclasses import dataclass
from typing import Iterator, TypeAlias

FUNCTIONS = ("sin", "cos", "exp", "sqrt", "log")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Pi:
    pass


@dataclass(frozen=True)
class Var:
    index: int  # 1-based: x1..xn


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str  # one of FUNCTIONS
    arg: "Expr"


Expr: TypeAlias = Num | Pi | Var | Neg | BinOp | Call


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack: list[Expr] = [e]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Neg):
            stack.append(node.operand)
        elif isinstance(node, BinOp):
            stack.extend((node.right, node.left))
        elif isinstance(node, Call):
            stack.append(node.arg)


def variables(e: Expr) -> frozenset[int]:
    return frozenset(n.index for n in walk(e) if isinstance(n, Var))


def is_constant(e: Expr) -> bool:
    return not variables(e)


def to_source(e: Expr) -> str:
    """Fully parenthesized source text; parse(to_source(e)) == e."""
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, Pi):
        return "pi"
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    return f"{e.fn}({to_source(e.arg)})"
