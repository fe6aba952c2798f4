"""
Text front end for circuits, Fock states, generators and characters.

Circuits are stages separated by ';' or newlines, applied in order:

    fourier(2)@0,1
    tensor(pauli_z(2), identity(2)); permute(1,0)@2,3

A stage is an expression with an optional '@' list of the modes it acts
on; without one it acts on modes 0..dim-1.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from bell.layout import NAMED_STATES, named_state
from errors import ParseError
from fock.state import basis_state, tensor_product
from linalg.matrices import (
    INTERNAL_TOL,
    TransferMatrix,
    compose,
    direct_sum,
    embed,
    fourier_matrix,
    identity,
    tensor,
)
from linalg.monomial import monomial_from_matrix, pauli_x, pauli_z
from linalg.phases import ExactPhase

_TOKEN = re.compile(
    r"""
    (?P<number>-?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<punct>[(),;@/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class Stage:
    matrix: TransferMatrix
    modes: Optional[Tuple[int, ...]]

    @property
    def reach(self):
        return max(self.modes) + 1 if self.modes else self.matrix.dim


def tokenize(text):
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"Unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind == 'newline':
            tokens.append(Token('sep', '\n', line, pos - line_start + 1))
            line += 1
            line_start = match.end()
        elif kind != 'space':
            value = match.group()
            if kind == 'punct' and value == ';':
                kind = 'sep'
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token('end', '', line, pos - line_start + 1))
    return tokens


class CircuitParser:
    """Recursive-descent parser over the token stream."""

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def advance(self):
        token = self.current
        self.pos += 1
        return token

    def expect(self, text):
        token = self.current
        if token.text != text:
            found = token.text or 'end of input'
            raise self.error(f"Expected {text!r}, found {found!r}")
        return self.advance()

    def integer(self):
        token = self.current
        if token.kind != 'number' or not re.fullmatch(r'-?\d+', token.text):
            raise self.error(f"Expected an integer, found {token.text or 'end of input'!r}")
        self.advance()
        return int(token.text)

    def positive(self):
        token = self.current
        value = self.integer()
        if value < 1:
            raise self.error(f"Dimension must be positive, got {value}", token)
        return value

    def turns(self):
        """A rational p/q, an integer or a decimal number of turns."""
        token = self.current
        if token.kind != 'number':
            raise self.error(f"Expected a number of turns, found {token.text or 'end of input'!r}")
        self.advance()
        if self.current.text == '/':
            self.advance()
            denominator = self.integer()
            if denominator == 0:
                raise self.error("Zero denominator", token)
            return Fraction(int(token.text), denominator)
        if re.fullmatch(r'-?\d+', token.text):
            return Fraction(int(token.text))
        return float(token.text)

    def parse_program(self):
        stages = []
        while True:
            while self.current.kind == 'sep':
                self.advance()
            if self.current.kind == 'end':
                break
            stages.append(self.parse_stage())
            if self.current.kind not in ('sep', 'end'):
                raise self.error(f"Expected ';' or a newline, found {self.current.text!r}")
        if not stages:
            raise self.error("Empty circuit")
        return stages

    def parse_stage(self):
        matrix = self.parse_expr()
        modes = None
        if self.current.text == '@':
            at = self.advance()
            modes = [self.integer()]
            while self.current.text == ',':
                self.advance()
                modes.append(self.integer())
            if len(modes) != matrix.dim:
                raise self.error(f"{matrix.dim}-mode stage placed on {len(modes)} modes", at)
            if len(set(modes)) != len(modes):
                raise self.error(f"Duplicate modes in {modes}", at)
            if min(modes) < 0:
                raise self.error(f"Negative mode in {modes}", at)
            modes = tuple(modes)
        return Stage(matrix, modes)

    def parse_expr(self):
        token = self.current
        if token.kind != 'name':
            raise self.error(f"Expected a circuit primitive, found {token.text or 'end of input'!r}")
        self.advance()
        self.expect('(')
        name = token.text
        if name == 'fourier':
            result = fourier_matrix(self.positive())
        elif name == 'pauli_x':
            result = pauli_x(self.positive()).to_transfer_matrix()
        elif name == 'pauli_z':
            result = pauli_z(self.positive()).to_transfer_matrix()
        elif name == 'identity':
            result = identity(self.positive())
        elif name == 'phase':
            result = TransferMatrix([[ExactPhase(self.turns()).to_complex()]], tol=INTERNAL_TOL)
        elif name == 'permute':
            result = self.parse_permutation(token)
        elif name in ('tensor', 'dsum'):
            first = self.parse_expr()
            self.expect(',')
            second = self.parse_expr()
            result = tensor(first, second) if name == 'tensor' else direct_sum(first, second)
        else:
            raise self.error(f"Unknown primitive {name!r}", token)
        self.expect(')')
        return result

    def parse_permutation(self, token):
        targets = [self.integer()]
        while self.current.text == ',':
            self.advance()
            targets.append(self.integer())
        if sorted(targets) != list(range(len(targets))):
            raise self.error(f"{targets} is not a permutation of 0..{len(targets) - 1}", token)
        matrix = np.zeros((len(targets), len(targets)))
        for j, target in enumerate(targets):
            matrix[target, j] = 1.0
        return TransferMatrix(matrix, tol=INTERNAL_TOL)


def parse_stages(text) -> List[Stage]:
    return CircuitParser(text).parse_program()


def parse_circuit(text, modes=None):
    """
    Parse a circuit description into one transfer matrix.

    Args:
        text (str): Stages separated by ';' or newlines
        modes (int): Mode count of the input state; the circuit is widened to it

    Returns:
        TransferMatrix: First stage acts first
    """
    stages = parse_stages(text)
    total = max([modes or 0] + [stage.reach for stage in stages])
    placed = []
    for stage in stages:
        targets = stage.modes or tuple(range(stage.matrix.dim))
        placed.append(embed(stage.matrix, targets, total))
    return compose(placed)


def parse_generators(text, modes=None):
    """
    Monomial group generators, one circuit expression per ';' or newline.

    Args:
        text (str): e.g. "tensor(pauli_z(2), identity(2)); tensor(identity(2), pauli_x(2))"
        modes (int): Mode count the generators act on

    Returns:
        list: MonomialMatrix generators
    """
    stages = parse_stages(text)
    total = max([modes or 0] + [stage.reach for stage in stages])
    generators = []
    for stage in stages:
        targets = stage.modes or tuple(range(stage.matrix.dim))
        generators.append(monomial_from_matrix(embed(stage.matrix, targets, total)))
    return generators


_PHASE_TOKEN = re.compile(r'^e\(\s*(-?\d+)\s*/\s*(\d+)\s*\)$')
_NAMED_PHASES = {'1': Fraction(0), '-1': Fraction(1, 2), 'i': Fraction(1, 4), '-i': Fraction(3, 4)}


def parse_character(text):
    """
    Eigenvalues per generator: '1', '-1', 'i', '-i' or 'e(p/q)' for e^{2πip/q}.

    Returns:
        list: ExactPhase per generator
    """
    values = []
    column = 1
    for part in text.split(','):
        token = part.strip()
        if token in _NAMED_PHASES:
            values.append(ExactPhase(_NAMED_PHASES[token]))
        else:
            match = _PHASE_TOKEN.match(token)
            if not match or int(match.group(2)) == 0:
                raise ParseError(f"Unrecognized eigenvalue {token!r}", 1, column)
            values.append(ExactPhase(Fraction(int(match.group(1)), int(match.group(2)))))
        column += len(part) + 1
    return values


def parse_state(text):
    """
    A Fock state: an occupation list '1,0,2', a named state, or a '*' product of them.

    Returns:
        StateVector: Factors laid out one after another
    """
    factors = []
    column = 1
    for part in text.split('*'):
        token = part.strip()
        if token in NAMED_STATES:
            factors.append(named_state(token))
        elif re.fullmatch(r'\d+(\s*,\s*\d+)*', token):
            factors.append(basis_state(int(x) for x in token.split(',')))
        else:
            raise ParseError(f"Unrecognized state {token!r}", 1, column)
        column += len(part) + 1
    return tensor_product(factors)

