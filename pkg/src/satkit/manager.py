"""Variable managers: hand out fresh variables and track the used range."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Hashable

from .types import MAX_VAR_INDEX, Lit, OutOfRangeError, Var


class VarManager(ABC):
    """Tracks which variables are in use and can mint fresh ones.

    ``new_var`` never returns a variable that was returned before or that
    was otherwise marked used.
    """

    @abstractmethod
    def new_var(self) -> Var:
        """Return a variable that has not been used so far."""

    @abstractmethod
    def mark_used(self, v: Var) -> None:
        """Extend the used range to cover ``v``."""

    @abstractmethod
    def max_used_var(self) -> Var | None:
        """Highest-index used variable, or None if none are used."""

    def n_used(self) -> int:
        mv = self.max_used_var()
        return 0 if mv is None else mv.index + 1

    def new_lit(self) -> Lit:
        return self.new_var().pos_lit()

    def mark_used_lit(self, l: Lit) -> None:
        self.mark_used(l.var())


class BasicVarManager(VarManager):
    """Keeps only the next free index."""

    def __init__(self, n_used: int = 0) -> None:
        self._next = n_used

    def new_var(self) -> Var:
        if self._next > MAX_VAR_INDEX:
            raise OutOfRangeError("variable space exhausted")
        v = Var(self._next)
        self._next += 1
        return v

    def mark_used(self, v: Var) -> None:
        if v.index >= self._next:
            self._next = v.index + 1

    def max_used_var(self) -> Var | None:
        return Var(self._next - 1) if self._next else None

    def __repr__(self) -> str:
        return f"BasicVarManager(n_used={self._next})"


class ObjectVarManager(BasicVarManager):
    """Additionally maintains a bijection between client keys and variables.

    Keys are opaque hashable identifiers; looking the same key up twice
    yields the same variable.
    """

    def __init__(self, n_used: int = 0) -> None:
        super().__init__(n_used)
        self._key_to_var: dict[Hashable, Var] = {}
        self._var_to_key: dict[int, Hashable] = {}

    def var_for(self, key: Hashable) -> Var:
        v = self._key_to_var.get(key)
        if v is None:
            v = self.new_var()
            self._key_to_var[key] = v
            self._var_to_key[v.index] = key
        return v

    def lit_for(self, key: Hashable) -> Lit:
        return self.var_for(key).pos_lit()

    def key_for(self, v: Var) -> Hashable | None:
        return self._var_to_key.get(v.index)

    def n_objects(self) -> int:
        return len(self._key_to_var)
