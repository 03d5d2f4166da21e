"""Tokenizer, parse tree, and recursive-descent parser for the supported SQL dialect.

Supported statements:

    SELECT <list|*> FROM t1 [, t2 ...]
        [WHERE cond] [GROUP BY cols] [HAVING cond] [ORDER BY col [ASC|DESC], ...]
    UPDATE t SET col = expr [, ...] [WHERE cond]

Conditions combine predicates with AND/OR/NOT and parentheses. Predicates:
comparisons (=, <, >, <=, >=, <>, !=), BETWEEN ... AND ..., LIKE,
IN (value list) and IN (SELECT ...), plus scalar subqueries as comparison
operands. Aggregates SUM/AVG/MIN/MAX/COUNT are accepted wherever an
expression is (COUNT additionally takes *). Everything else is rejected with
a named UnsupportedConstructError so diagnostics stay actionable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import SqlSyntaxError, UnsupportedConstructError

# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+|--[^\n]*)
    | (?P<number>\d+(?:\.\d+)?)
    | (?P<string>'(?:[^']|'')*')
    | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
    | (?P<op><=|>=|<>|!=|=|<|>|\(|\)|,|\.|\*|\+|-|/|;)
    """,
    re.VERBOSE,
)

AGGREGATE_FUNCTIONS = frozenset({"sum", "avg", "min", "max", "count"})

_KEYWORDS = frozenset(
    {
        "select", "from", "where", "group", "having", "order", "by",
        "update", "set", "and", "or", "not", "between", "like", "in",
        "as", "asc", "desc",
    }
    | AGGREGATE_FUNCTIONS
)

# Recognized keywords that fall outside the dialect, mapped to the construct
# name reported in diagnostics.
_UNSUPPORTED_KEYWORDS = {
    "join": "JOIN",
    "inner": "JOIN",
    "outer": "JOIN",
    "left": "JOIN",
    "right": "JOIN",
    "cross": "JOIN",
    "full": "JOIN",
    "on": "JOIN",
    "union": "UNION",
    "intersect": "INTERSECT",
    "except": "EXCEPT",
    "distinct": "DISTINCT",
    "is": "IS predicate",
    "null": "NULL literal",
    "exists": "EXISTS predicate",
    "case": "CASE expression",
    "insert": "INSERT statement",
    "delete": "DELETE statement",
    "create": "CREATE statement",
    "drop": "DROP statement",
    "with": "common table expression",
    "limit": "LIMIT clause",
    "offset": "OFFSET clause",
}


@dataclass(frozen=True)
class Token:
    kind: str  # "number" | "string" | "ident" | "op" | "eof"
    value: str
    position: int

    def is_keyword(self, word: str) -> bool:
        return self.kind == "ident" and self.value.lower() == word


def tokenize(sql: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(sql):
        match = _TOKEN_RE.match(sql, pos)
        if match is None:
            raise SqlSyntaxError(f"unexpected character {sql[pos]!r}", pos)
        if match.lastgroup != "ws":
            tokens.append(Token(match.lastgroup, match.group(), pos))
        pos = match.end()
    tokens.append(Token("eof", "", len(sql)))
    return tokens


# ---------------------------------------------------------------------------
# Parse tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ColumnRef:
    column: str
    table: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "column", self.column.lower())
        if self.table is not None:
            object.__setattr__(self, "table", self.table.lower())


@dataclass(frozen=True)
class Literal:
    value: int | float | str


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class FuncCall:
    name: str
    args: tuple = ()
    star: bool = False


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class LogicalOp:
    op: str  # "and" | "or"
    operands: tuple


@dataclass(frozen=True)
class NotOp:
    operand: object


@dataclass(frozen=True)
class BetweenOp:
    operand: object
    low: object
    high: object
    negated: bool = False


@dataclass(frozen=True)
class InList:
    operand: object
    items: tuple
    negated: bool = False


@dataclass(frozen=True)
class InSubquery:
    operand: object
    subquery: "Subquery"
    negated: bool = False


@dataclass(frozen=True)
class Subquery:
    select: "SelectStatement"


@dataclass(frozen=True)
class SelectItem:
    expr: object
    alias: str | None = None


@dataclass(frozen=True)
class OrderItem:
    column: ColumnRef
    descending: bool = False


@dataclass(frozen=True)
class SelectStatement:
    select_items: tuple[SelectItem, ...]
    tables: tuple[str, ...]
    where: object | None = None
    group_by: tuple[ColumnRef, ...] = ()
    having: object | None = None
    order_by: tuple[OrderItem, ...] = ()


@dataclass(frozen=True)
class UpdateStatement:
    table: str
    assignments: tuple[tuple[ColumnRef, object], ...] = ()
    where: object | None = None


Statement = SelectStatement | UpdateStatement


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


@dataclass
class _Parser:
    tokens: list[Token]
    index: int = field(default=0)

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def error(self, message: str) -> SqlSyntaxError:
        token = self.peek()
        found = repr(token.value) if token.kind != "eof" else "end of statement"
        return SqlSyntaxError(f"{message}, found {found}", token.position)

    def check_supported(self, token: Token) -> None:
        if token.kind == "ident":
            construct = _UNSUPPORTED_KEYWORDS.get(token.value.lower())
            if construct is not None:
                raise UnsupportedConstructError(construct, token.position)

    def accept_op(self, op: str) -> bool:
        if self.peek().kind == "op" and self.peek().value == op:
            self.advance()
            return True
        return False

    def expect_op(self, op: str) -> Token:
        if self.peek().kind == "op" and self.peek().value == op:
            return self.advance()
        raise self.error(f"expected {op!r}")

    def accept_keyword(self, word: str) -> bool:
        if self.peek().is_keyword(word):
            self.advance()
            return True
        return False

    def expect_keyword(self, word: str) -> Token:
        if self.peek().is_keyword(word):
            return self.advance()
        self.check_supported(self.peek())
        raise self.error(f"expected {word.upper()}")

    def expect_identifier(self, what: str) -> str:
        token = self.peek()
        self.check_supported(token)
        if token.kind == "ident" and token.value.lower() not in _KEYWORDS:
            self.advance()
            return token.value.lower()
        raise self.error(f"expected {what}")

    # -- statements ---------------------------------------------------------

    def parse_statement(self) -> Statement:
        token = self.peek()
        if token.is_keyword("select"):
            statement = self.parse_select()
        elif token.is_keyword("update"):
            statement = self.parse_update()
        else:
            self.check_supported(token)
            raise self.error("expected SELECT or UPDATE")
        self.accept_op(";")
        if self.peek().kind != "eof":
            self.check_supported(self.peek())
            raise self.error("unexpected trailing input")
        return statement

    def parse_select(self) -> SelectStatement:
        self.expect_keyword("select")
        select_items = self.parse_select_list()
        self.expect_keyword("from")
        tables = self.parse_table_list()
        where = self.parse_condition() if self.accept_keyword("where") else None
        group_by: tuple[ColumnRef, ...] = ()
        if self.accept_keyword("group"):
            self.expect_keyword("by")
            group_by = self.parse_column_list()
        having = self.parse_condition() if self.accept_keyword("having") else None
        order_by: tuple[OrderItem, ...] = ()
        if self.accept_keyword("order"):
            self.expect_keyword("by")
            order_by = self.parse_order_list()
        return SelectStatement(select_items, tables, where, group_by, having, order_by)

    def parse_update(self) -> UpdateStatement:
        self.expect_keyword("update")
        table = self.expect_identifier("table name")
        self.expect_keyword("set")
        assignments = [self.parse_assignment()]
        while self.accept_op(","):
            assignments.append(self.parse_assignment())
        where = self.parse_condition() if self.accept_keyword("where") else None
        return UpdateStatement(table, tuple(assignments), where)

    def parse_assignment(self) -> tuple[ColumnRef, object]:
        target = self.parse_column_ref()
        self.expect_op("=")
        return target, self.parse_expression()

    def parse_select_list(self) -> tuple[SelectItem, ...]:
        if self.peek().kind == "op" and self.peek().value == "*":
            self.advance()
            return (SelectItem(Star()),)
        items = [self.parse_select_item()]
        while self.accept_op(","):
            items.append(self.parse_select_item())
        return tuple(items)

    def parse_select_item(self) -> SelectItem:
        position = self.peek().position
        expr = self.parse_expression()
        if isinstance(expr, Subquery):
            raise UnsupportedConstructError("subquery in SELECT list", position)
        alias = None
        if self.accept_keyword("as"):
            alias = self.expect_identifier("alias")
        return SelectItem(expr, alias)

    def parse_table_list(self) -> tuple[str, ...]:
        tables = [self.parse_table_ref()]
        while self.accept_op(","):
            tables.append(self.parse_table_ref())
        return tuple(tables)

    def parse_table_ref(self) -> str:
        name = self.expect_identifier("table name")
        follower = self.peek()
        if follower.kind == "ident" and follower.value.lower() not in _UNSUPPORTED_KEYWORDS:
            if follower.value.lower() not in _KEYWORDS:
                raise UnsupportedConstructError("table alias", follower.position)
            if follower.is_keyword("as"):
                raise UnsupportedConstructError("table alias", follower.position)
        self.check_supported(follower)
        return name

    def parse_column_list(self) -> tuple[ColumnRef, ...]:
        columns = [self.parse_column_ref()]
        while self.accept_op(","):
            columns.append(self.parse_column_ref())
        return tuple(columns)

    def parse_order_list(self) -> tuple[OrderItem, ...]:
        items = []
        while True:
            column = self.parse_column_ref()
            descending = False
            if self.accept_keyword("desc"):
                descending = True
            else:
                self.accept_keyword("asc")
            items.append(OrderItem(column, descending))
            if not self.accept_op(","):
                return tuple(items)

    def parse_column_ref(self) -> ColumnRef:
        first = self.expect_identifier("column name")
        if self.accept_op("."):
            second = self.expect_identifier("column name")
            return ColumnRef(second, table=first)
        return ColumnRef(first)

    # -- conditions ---------------------------------------------------------

    def parse_condition(self) -> object:
        operands = [self.parse_and_condition()]
        while self.accept_keyword("or"):
            operands.append(self.parse_and_condition())
        if len(operands) == 1:
            return operands[0]
        return LogicalOp("or", tuple(operands))

    def parse_and_condition(self) -> object:
        operands = [self.parse_not_condition()]
        while self.accept_keyword("and"):
            operands.append(self.parse_not_condition())
        if len(operands) == 1:
            return operands[0]
        return LogicalOp("and", tuple(operands))

    def parse_not_condition(self) -> object:
        if self.accept_keyword("not"):
            return NotOp(self.parse_not_condition())
        return self.parse_predicate()

    def parse_predicate(self) -> object:
        left = self.parse_expression()
        token = self.peek()
        if token.kind == "op" and token.value in ("=", "<", ">", "<=", ">=", "<>", "!="):
            op = self.advance().value
            if op == "!=":
                op = "<>"
            return BinaryOp(op, left, self.parse_expression())
        negated = False
        if token.is_keyword("not"):
            follower = self.peek(1)
            if follower.is_keyword("between") or follower.is_keyword("like") or follower.is_keyword("in"):
                self.advance()
                negated = True
                token = self.peek()
        if token.is_keyword("between"):
            self.advance()
            low = self.parse_expression()
            self.expect_keyword("and")
            high = self.parse_expression()
            return BetweenOp(left, low, high, negated)
        if token.is_keyword("like"):
            self.advance()
            pattern = BinaryOp("like", left, self.parse_expression())
            return NotOp(pattern) if negated else pattern
        if token.is_keyword("in"):
            self.advance()
            return self.parse_in_tail(left, negated)
        # A bare expression is not a predicate in this dialect.
        self.check_supported(token)
        raise self.error("expected a comparison, BETWEEN, LIKE, or IN")

    def parse_in_tail(self, operand: object, negated: bool) -> object:
        self.expect_op("(")
        if self.peek().is_keyword("select"):
            select = self.parse_select()
            self.expect_op(")")
            return InSubquery(operand, Subquery(select), negated)
        items = [self.parse_expression()]
        while self.accept_op(","):
            items.append(self.parse_expression())
        self.expect_op(")")
        return InList(operand, tuple(items), negated)

    # -- expressions --------------------------------------------------------

    def parse_expression(self) -> object:
        left = self.parse_term()
        while self.peek().kind == "op" and self.peek().value in ("+", "-"):
            op = self.advance().value
            left = BinaryOp(op, left, self.parse_term())
        return left

    def parse_term(self) -> object:
        left = self.parse_factor()
        while self.peek().kind == "op" and self.peek().value in ("*", "/"):
            op = self.advance().value
            left = BinaryOp(op, left, self.parse_factor())
        return left

    def parse_factor(self) -> object:
        if self.peek().kind == "op" and self.peek().value == "-":
            self.advance()
            return BinaryOp("-", Literal(0), self.parse_factor())
        return self.parse_primary()

    def parse_primary(self) -> object:
        token = self.peek()
        if token.kind == "number":
            self.advance()
            value = float(token.value) if "." in token.value else int(token.value)
            return Literal(value)
        if token.kind == "string":
            self.advance()
            return Literal(token.value[1:-1].replace("''", "'"))
        if token.kind == "op" and token.value == "(":
            self.advance()
            if self.peek().is_keyword("select"):
                select = self.parse_select()
                self.expect_op(")")
                return Subquery(select)
            expr = self.parse_expression()
            self.expect_op(")")
            return expr
        if token.kind == "ident":
            lowered = token.value.lower()
            if lowered in AGGREGATE_FUNCTIONS:
                return self.parse_function_call()
            self.check_supported(token)
            if lowered in _KEYWORDS:
                raise self.error("expected an expression")
            return self.parse_column_ref()
        self.check_supported(token)
        raise self.error("expected an expression")

    def parse_function_call(self) -> FuncCall:
        name = self.advance().value.lower()
        self.expect_op("(")
        if name == "count" and self.peek().kind == "op" and self.peek().value == "*":
            self.advance()
            self.expect_op(")")
            return FuncCall(name, star=True)
        arg = self.parse_expression()
        self.expect_op(")")
        return FuncCall(name, (arg,))


def parse_query(sql: str) -> Statement:
    """Parse one SQL statement into a tree exposing clause boundaries.

    Raises SqlSyntaxError with a character position on malformed input and
    UnsupportedConstructError naming the construct on out-of-dialect SQL.
    """
    return _Parser(tokenize(sql)).parse_statement()


# ---------------------------------------------------------------------------
# Rendering (canonical re-serialization of a parse tree)
# ---------------------------------------------------------------------------


def render_sql(node: object) -> str:
    """Render a parse tree back to canonical SQL text."""
    if isinstance(node, SelectStatement):
        parts = ["SELECT " + ", ".join(_render_select_item(i) for i in node.select_items)]
        parts.append("FROM " + ", ".join(node.tables))
        if node.where is not None:
            parts.append("WHERE " + render_sql(node.where))
        if node.group_by:
            parts.append("GROUP BY " + ", ".join(render_sql(c) for c in node.group_by))
        if node.having is not None:
            parts.append("HAVING " + render_sql(node.having))
        if node.order_by:
            parts.append(
                "ORDER BY "
                + ", ".join(
                    render_sql(i.column) + (" DESC" if i.descending else "")
                    for i in node.order_by
                )
            )
        return " ".join(parts)
    if isinstance(node, UpdateStatement):
        sets = ", ".join(f"{render_sql(c)} = {render_sql(e)}" for c, e in node.assignments)
        text = f"UPDATE {node.table} SET {sets}"
        if node.where is not None:
            text += " WHERE " + render_sql(node.where)
        return text
    if isinstance(node, ColumnRef):
        return f"{node.table}.{node.column}" if node.table else node.column
    if isinstance(node, Literal):
        if isinstance(node.value, str):
            return "'" + node.value.replace("'", "''") + "'"
        return str(node.value)
    if isinstance(node, Star):
        return "*"
    if isinstance(node, FuncCall):
        inner = "*" if node.star else ", ".join(render_sql(a) for a in node.args)
        return f"{node.name.upper()}({inner})"
    if isinstance(node, BinaryOp):
        op = node.op.upper() if node.op == "like" else node.op
        return f"{_paren(node.left)} {op} {_paren(node.right)}"
    if isinstance(node, LogicalOp):
        return f" {node.op.upper()} ".join(_paren(o) for o in node.operands)
    if isinstance(node, NotOp):
        return f"NOT {_paren(node.operand)}"
    if isinstance(node, BetweenOp):
        kw = "NOT BETWEEN" if node.negated else "BETWEEN"
        return (
            f"{_paren(node.operand)} {kw} {_paren(node.low)} AND {_paren(node.high)}"
        )
    if isinstance(node, InList):
        kw = "NOT IN" if node.negated else "IN"
        return f"{_paren(node.operand)} {kw} ({', '.join(render_sql(i) for i in node.items)})"
    if isinstance(node, InSubquery):
        kw = "NOT IN" if node.negated else "IN"
        return f"{_paren(node.operand)} {kw} ({render_sql(node.subquery.select)})"
    if isinstance(node, Subquery):
        return f"({render_sql(node.select)})"
    raise TypeError(f"cannot render node of type {type(node).__name__}")


def _render_select_item(item: SelectItem) -> str:
    text = render_sql(item.expr)
    return f"{text} AS {item.alias}" if item.alias else text


def _paren(node: object) -> str:
    # Compound operands are parenthesized to keep re-parsing unambiguous.
    if isinstance(node, (LogicalOp, NotOp, BinaryOp, BetweenOp, InList, InSubquery)):
        return f"({render_sql(node)})"
    return render_sql(node)
