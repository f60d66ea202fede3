# -*- coding: utf-8 -*-
# Copyright 2024 FacetFlow developers.
# All rights reserved.
#
# This file is part of the FacetFlow distribution and
# governed by your choice of the "FacetFlow License Agreement"
# or the "GNU General Public License v3.0".
# Please see the LICENSE file that should
# have been included as part of this package.
"""FacetFlow.core function-body language.

A deterministic language for serverless function bodies. Threads are
defunctionalized (remaining frames plus environment) so that two threads
are equal exactly when they will behave the same. run executes pure
statements until the next I/O statement and returns it as an Operation
carrying the continuation thread.

What's here:

Expressions and statements.
---------------------------

Classes:
  - Lit, Var, BinOp, IsAbsent
  - Let, Read, Write, Send, Fork, RaiseLabel, If, For, Stop,
    CallDeclassifier

Threads and operations.
-----------------------

Classes:
  - Frame
  - Thread
  - ReadContinuation
  - OpRead, OpWrite, OpSend, OpFork, OpRaiseLabel, OpDeclassify, OpStop

Functions:
  - evaluate
  - run
  - apply_continuation
  - key_text
"""

from dataclasses import dataclass, field, replace
from logging import getLogger
from typing import Dict, Optional, Tuple, Union

from FacetFlow.core.facet_store import ABSENT, LabeledValue, value_kind
from FacetFlow.errors import ContractError

logger = getLogger(__name__)  # pylint: disable=invalid-name

DEFAULT_FUEL = 100000
BINARY_OPERATORS = frozenset(
    {'+', '-', '*', '==', '!=', '<', '<=', 'and', 'or', 'concat', 'bit'})
LABEL_SUFFIX = '_label'


class EvaluationError(Exception):
    """An expression cannot be evaluated; the thread crashes."""


@dataclass(frozen=True)
class Lit(object):
    """A literal value; kind keeps True and 1 apart."""

    value: Union[int, bool, str]
    kind: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', value_kind(self.value))


@dataclass(frozen=True)
class Var(object):
    """A variable reference."""

    name: str


@dataclass(frozen=True)
class BinOp(object):
    """A binary operation, op in BINARY_OPERATORS."""

    op: str
    lhs: 'Expr'
    rhs: 'Expr'


@dataclass(frozen=True)
class IsAbsent(object):
    """True iff the operand evaluates to ABSENT."""

    operand: 'Expr'


Expr = Union[Lit, Var, BinOp, IsAbsent]


@dataclass(frozen=True)
class Let(object):
    var: str
    value: Expr


@dataclass(frozen=True)
class Read(object):
    key: Expr
    bind: str


@dataclass(frozen=True)
class Write(object):
    key: Expr
    value: Expr


@dataclass(frozen=True)
class Send(object):
    channel: str
    value: Expr


@dataclass(frozen=True)
class Fork(object):
    body: Tuple


@dataclass(frozen=True)
class RaiseLabel(object):
    label: str


@dataclass(frozen=True)
class If(object):
    cond: Expr
    then: Tuple
    orelse: Tuple = ()


@dataclass(frozen=True)
class For(object):
    """Bounded loop; both bounds are inclusive and evaluated once."""

    var: str
    start: Expr
    end: Expr
    body: Tuple


@dataclass(frozen=True)
class Stop(object):
    pass


@dataclass(frozen=True)
class CallDeclassifier(object):
    name: str


Stmt = Union[Let, Read, Write, Send, Fork, RaiseLabel, If, For, Stop,
             CallDeclassifier]
Block = Tuple[Stmt, ...]
Env = Tuple[Tuple[str, str, object], ...]


@dataclass(frozen=True)
class Frame(object):
    """A block being executed.

    Attributes:
        block (tuple): statements of the block.
        pc (int): index of the next statement.
        loop_var (str): loop variable when the block is a for body.
        loop_index (int): current loop index.
        loop_end (int): inclusive upper bound of the loop.
    """

    block: Block
    pc: int = 0
    loop_var: Optional[str] = None
    loop_index: int = 0
    loop_end: int = 0


def freeze_env(env: Dict[str, object]) -> Env:
    """Turn bindings into a sorted, type-tagged tuple."""
    return tuple(sorted((name, value_kind(value), value)
                        for name, value in env.items()))


def thaw_env(env: Env) -> Dict[str, object]:
    """Turn a frozen environment back into a dict."""
    return {name: value for name, _, value in env}


@dataclass(frozen=True)
class Thread(object):
    """Remaining control stack plus environment.

    Attributes:
        frames (tuple): Frame stack, innermost last.
        env (tuple): (name, kind, value) bindings sorted by name.
    """

    frames: Tuple[Frame, ...]
    env: Env = ()

    @classmethod
    def start(cls, block: Block, env: Dict[str, object] = None) -> 'Thread':
        """Create a thread that will execute block from the top."""
        return cls((Frame(tuple(block)),), freeze_env(env or {}))

    @classmethod
    def halted(cls) -> 'Thread':
        """Create a thread that only ever stops."""
        return cls(())

    def binding(self, name: str):
        """Get the value bound to name, ABSENT when unbound."""
        for bound, _, value in self.env:
            if bound == name:
                return value
        return ABSENT


@dataclass(frozen=True)
class ReadContinuation(object):
    """Where a read resumes: the variable to bind and the suspended thread."""

    bind: str
    thread: Thread


@dataclass(frozen=True)
class OpRead(object):
    key: str
    cont: ReadContinuation


@dataclass(frozen=True)
class OpWrite(object):
    key: str
    value: Union[int, bool, str]
    cont: Thread
    kind: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', value_kind(self.value))


@dataclass(frozen=True)
class OpSend(object):
    channel: str
    value: Union[int, bool, str]
    cont: Thread
    kind: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'kind', value_kind(self.value))


@dataclass(frozen=True)
class OpFork(object):
    cont: Thread
    child: Thread


@dataclass(frozen=True)
class OpRaiseLabel(object):
    label: str
    cont: Thread


@dataclass(frozen=True)
class OpDeclassify(object):
    name: str
    cont: Thread


@dataclass(frozen=True)
class OpStop(object):
    """Program end, or a crash when diagnostic is set."""

    diagnostic: Optional[str] = None


Operation = Union[OpRead, OpWrite, OpSend, OpFork, OpRaiseLabel,
                  OpDeclassify, OpStop]


def _integer(value, op: str) -> int:
    if value_kind(value) != 'int':
        raise EvaluationError(f'{op} expects integers, got {value!r}')
    return value


def _boolean(value, op: str) -> bool:
    if value_kind(value) != 'bool':
        raise EvaluationError(f'{op} expects booleans, got {value!r}')
    return value


def _text(value) -> str:
    kind = value_kind(value)
    if kind == 'absent':
        raise EvaluationError('cannot stringify ABSENT')
    if kind == 'bool':
        return 'true' if value else 'false'
    return str(value)


def key_text(value) -> str:
    """Render a key expression's value as a store key.

    Raises:
        EvaluationError: the value is ABSENT or renders empty.
    """
    text = _text(value)
    if not text:
        raise EvaluationError('empty key')
    return text


def _binary(op: str, lhs, rhs):
    if op == '==':
        return (value_kind(lhs), lhs) == (value_kind(rhs), rhs)
    if op == '!=':
        return (value_kind(lhs), lhs) != (value_kind(rhs), rhs)
    if op == 'and':
        return _boolean(lhs, op) and _boolean(rhs, op)
    if op == 'or':
        return _boolean(lhs, op) or _boolean(rhs, op)
    if op == 'concat':
        return _text(lhs) + _text(rhs)
    left, right = _integer(lhs, op), _integer(rhs, op)
    if op == '<':
        return left < right
    if op == '<=':
        return left <= right
    if op == 'bit':
        if not 0 <= right < 64:
            raise EvaluationError(f'bit index {right} out of range')
        return (left >> right) & 1
    result = {'+': left + right, '-': left - right, '*': left * right}[op]
    try:
        value_kind(result)
    except ValueError:
        raise EvaluationError(f'integer overflow in {op}') from None
    return result


def evaluate(expr: Expr, env: Dict[str, object]):
    """Evaluate an expression against an environment.

    Raises:
        EvaluationError: unbound variable or ill-typed operands.
    """
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Var):
        if expr.name not in env:
            raise EvaluationError(f'unbound variable {expr.name}')
        return env[expr.name]
    if isinstance(expr, IsAbsent):
        return evaluate(expr.operand, env) is ABSENT
    if isinstance(expr, BinOp):
        if expr.op not in BINARY_OPERATORS:
            raise EvaluationError(f'unknown operator {expr.op}')
        return _binary(expr.op, evaluate(expr.lhs, env),
                       evaluate(expr.rhs, env))
    raise EvaluationError(f'not an expression: {expr!r}')


def run(thread: Thread, fuel: int = DEFAULT_FUEL) -> Operation:
    """Execute pure statements until the next I/O operation.

    Every pure statement and every loop back-edge costs one unit of fuel.
    Running out of fuel, an unbound variable or an ill-typed operand stops
    the thread with a diagnostic instead of raising.

    Args:
        thread (Thread): thread to run.
        fuel (int): positive budget of pure steps.

    Returns:
        (Operation): the next I/O operation with its continuation.

    Raises:
        ContractError: fuel is not positive.
    """
    if fuel <= 0:
        raise ContractError(f'run needs positive fuel, got {fuel}')
    frames = list(thread.frames)
    env = thaw_env(thread.env)

    def resume() -> Thread:
        return Thread(tuple(frames), freeze_env(env))

    try:
        while frames:
            frame = frames[-1]
            if frame.pc >= len(frame.block):
                if (frame.loop_var is not None and
                        frame.loop_index < frame.loop_end):
                    fuel -= 1
                    if fuel < 0:
                        return OpStop('fuel exhausted')
                    index = frame.loop_index + 1
                    env[frame.loop_var] = index
                    frames[-1] = replace(frame, pc=0, loop_index=index)
                else:
                    frames.pop()
                continue
            stmt = frame.block[frame.pc]
            frames[-1] = replace(frame, pc=frame.pc + 1)

            if isinstance(stmt, Read):
                key = key_text(evaluate(stmt.key, env))
                return OpRead(key, ReadContinuation(stmt.bind, resume()))
            if isinstance(stmt, Write):
                key = key_text(evaluate(stmt.key, env))
                value = evaluate(stmt.value, env)
                if value is ABSENT:
                    raise EvaluationError('cannot write ABSENT')
                return OpWrite(key, value, resume())
            if isinstance(stmt, Send):
                value = evaluate(stmt.value, env)
                if value is ABSENT:
                    raise EvaluationError('cannot send ABSENT')
                return OpSend(stmt.channel, value, resume())
            if isinstance(stmt, Fork):
                child = Thread((Frame(stmt.body),), freeze_env(env))
                return OpFork(resume(), child)
            if isinstance(stmt, RaiseLabel):
                return OpRaiseLabel(stmt.label, resume())
            if isinstance(stmt, CallDeclassifier):
                return OpDeclassify(stmt.name, resume())
            if isinstance(stmt, Stop):
                return OpStop()

            fuel -= 1
            if fuel < 0:
                return OpStop('fuel exhausted')
            if isinstance(stmt, Let):
                env[stmt.var] = evaluate(stmt.value, env)
            elif isinstance(stmt, If):
                branch = stmt.then if _boolean(
                    evaluate(stmt.cond, env), 'if') else stmt.orelse
                frames.append(Frame(branch))
            elif isinstance(stmt, For):
                start = _integer(evaluate(stmt.start, env), 'for')
                end = _integer(evaluate(stmt.end, env), 'for')
                if start <= end:
                    env[stmt.var] = start
                    frames.append(Frame(stmt.body, 0, stmt.var, start, end))
            else:
                raise EvaluationError(f'not a statement: {stmt!r}')
    except EvaluationError as error:
        logger.debug(f'Thread crashed: {error}')
        return OpStop(str(error))
    return OpStop()


def apply_continuation(cont: ReadContinuation, result) -> Thread:
    """Bind a read result and resume the suspended thread.

    The value is bound under cont.bind and its label under
    cont.bind + '_label'; ABSENT binds both to ABSENT.

    Args:
        cont (ReadContinuation): continuation from an OpRead.
        result (LabeledValue or Absent): the read result.

    Returns:
        (Thread): the resumed thread.
    """
    env = thaw_env(cont.thread.env)
    if isinstance(result, LabeledValue):
        env[cont.bind] = result.value
        env[cont.bind + LABEL_SUFFIX] = result.label
    else:
        env[cont.bind] = ABSENT
        env[cont.bind + LABEL_SUFFIX] = ABSENT
    return Thread(cont.thread.frames, freeze_env(env))
