"""Referee for the paint-and-correct game.

The referee owns all legality: painters and correctors only propose moves.
One round is (present S, keep I): the painter presents a nonempty subset of
the uncoloured vertices, the corrector keeps an independent subset I of S
containing every presented vertex that has no erasers left, and every other
presented vertex spends one eraser.  If the presented set's zero-eraser
vertices are not independent there is no legal keep, and the referee ends
the game for the painter without consulting the corrector.

Strategies receive the full public state and are built fresh per game from
factories; their randomness comes from per-game sub-seeds of the game seed.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import IO, Optional

import numpy as np

from .errors import IllegalMoveError, ParameterError, StateError
from .graph import Graph
from .rng import child_seed


class Phase(enum.Enum):
    AWAIT_PRESENT = "await_present"
    AWAIT_RESPOND = "await_respond"
    FINISHED = "finished"


class Outcome(enum.Enum):
    CORRECTOR_WINS = "corrector_wins"
    PAINTER_WINS = "painter_wins"


def _vertex_array(graph: Graph, S) -> np.ndarray:
    arr = np.unique(np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64))
    if len(arr) and (arr[0] < 0 or arr[-1] >= graph.n):
        raise ParameterError("set contains unknown vertices")
    return arr


class GameState:
    """Mutable referee state for a single game."""

    def __init__(self, graph: Graph, erasers: np.ndarray, budget: Optional[int]):
        self.graph = graph
        self.budget = budget
        self._erasers = erasers.astype(np.int64, copy=True)
        self._initial = erasers.astype(np.int64, copy=True)
        self._remaining = np.ones(graph.n, dtype=bool)
        self._pending: Optional[np.ndarray] = None
        self.round_index = 0
        self.outcome: Optional[Outcome] = None
        if graph.n == 0:
            self.phase = Phase.FINISHED
            self.outcome = Outcome.CORRECTOR_WINS
        else:
            self.phase = Phase.AWAIT_PRESENT

    # -- construction -------------------------------------------------------

    @classmethod
    def new_game(cls, graph: Graph, budget: int) -> "GameState":
        if budget < 0:
            raise ParameterError("budget must be >= 0")
        return cls(graph, np.full(graph.n, budget, dtype=np.int64), budget)

    @classmethod
    def with_erasers(cls, graph: Graph, erasers) -> "GameState":
        vec = np.asarray(list(erasers), dtype=np.int64)
        if len(vec) != graph.n:
            raise ParameterError("eraser vector length must equal vertex count")
        if (vec < 0).any():
            raise ParameterError("eraser counts must be >= 0")
        return cls(graph, vec, None)

    # -- read-only views -----------------------------------------------------

    @property
    def erasers(self) -> np.ndarray:
        view = self._erasers.view()
        view.setflags(write=False)
        return view

    @property
    def remaining(self) -> np.ndarray:
        view = self._remaining.view()
        view.setflags(write=False)
        return view

    @property
    def pending(self) -> Optional[np.ndarray]:
        if self._pending is None:
            return None
        view = self._pending.view()
        view.setflags(write=False)
        return view

    def remaining_vertices(self) -> np.ndarray:
        return np.nonzero(self._remaining)[0].astype(np.int64)

    def remaining_count(self) -> int:
        return int(self._remaining.sum())

    def erasers_used(self) -> np.ndarray:
        return self._initial - self._erasers

    # -- moves ---------------------------------------------------------------

    def present(self, S) -> "GameState":
        if self.phase is not Phase.AWAIT_PRESENT:
            raise StateError(f"present() in phase {self.phase.value}")
        try:
            arr = _vertex_array(self.graph, S)
        except ParameterError as exc:
            raise IllegalMoveError("painter", str(exc)) from exc
        if len(arr) == 0:
            raise IllegalMoveError("painter", "presented set is empty")
        if not self._remaining[arr].all():
            raise IllegalMoveError(
                "painter", "presented set contains coloured vertices"
            )
        self._pending = arr
        self.phase = Phase.AWAIT_RESPOND
        return self

    def legal_responses_exist(self) -> bool:
        """True iff the zero-eraser part of the pending set is independent."""
        if self.phase is not Phase.AWAIT_RESPOND:
            raise StateError("legal_responses_exist() requires a pending set")
        stuck = self._pending[self._erasers[self._pending] == 0]
        return self.graph.is_independent(stuck)

    def respond(self, I) -> "GameState":
        if self.phase is not Phase.AWAIT_RESPOND:
            raise StateError(f"respond() in phase {self.phase.value}")
        if not self.legal_responses_exist():
            # the paint move already won; no response is accepted
            self._finish(Outcome.PAINTER_WINS)
            return self
        try:
            arr = _vertex_array(self.graph, I)
        except ParameterError as exc:
            raise IllegalMoveError("corrector", str(exc)) from exc
        pending = self._pending
        if len(arr) and not np.isin(arr, pending).all():
            raise IllegalMoveError("corrector", "keep is not a subset of the presented set")
        if not self.graph.is_independent(arr):
            raise IllegalMoveError("corrector", "keep is not independent")
        erased = np.setdiff1d(pending, arr, assume_unique=True)
        if len(erased) and (self._erasers[erased] < 1).any():
            raise IllegalMoveError(
                "corrector", "erasing a vertex that has no erasers left"
            )
        self._erasers[erased] -= 1
        self._remaining[arr] = False
        self._pending = None
        self.round_index += 1
        if not self._remaining.any():
            self._finish(Outcome.CORRECTOR_WINS)
        else:
            self.phase = Phase.AWAIT_PRESENT
        return self

    def _finish(self, outcome: Outcome) -> None:
        self.phase = Phase.FINISHED
        self.outcome = outcome
        self._pending = None


# ---------------------------------------------------------------------------
# transcripts


@dataclass
class GameRound:
    presented: np.ndarray
    kept: np.ndarray

    @property
    def erased(self) -> np.ndarray:
        return np.setdiff1d(self.presented, self.kept, assume_unique=True)


@dataclass
class GameStats:
    rounds: int = 0
    max_erasers_used: int = 0
    total_erasers_used: int = 0
    spend_by_class: dict = field(default_factory=dict)
    fallback_count: int = 0


@dataclass
class Transcript:
    n: int
    budget: Optional[int]
    painter_name: str
    corrector_name: str
    seed: int
    painter_seed: int
    corrector_seed: int
    rounds: list[GameRound]
    outcome: Outcome
    forfeited_by: Optional[str] = None
    stats: GameStats = field(default_factory=GameStats)

    def to_jsonl(self, fh: IO[str]) -> None:
        header = {
            "n": self.n,
            "budget": self.budget,
            "seed": self.seed,
            "painter_seed": self.painter_seed,
            "corrector_seed": self.corrector_seed,
            "painter": self.painter_name,
            "corrector": self.corrector_name,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for i, rnd in enumerate(self.rounds):
            fh.write(
                json.dumps(
                    {
                        "round": i,
                        "presented": sorted(int(v) for v in rnd.presented),
                        "kept": sorted(int(v) for v in rnd.kept),
                    },
                    sort_keys=True,
                )
                + "\n"
            )
        trailer = {"outcome": self.outcome.value, "forfeited_by": self.forfeited_by}
        fh.write(json.dumps(trailer, sort_keys=True) + "\n")

    @classmethod
    def from_jsonl(cls, fh: IO[str]) -> "Transcript":
        lines = [json.loads(ln) for ln in fh if ln.strip()]
        if len(lines) < 2:
            raise ParameterError("transcript needs a header and a trailer")
        head, trailer = lines[0], lines[-1]
        rounds = [
            GameRound(
                presented=np.array(obj["presented"], dtype=np.int64),
                kept=np.array(obj["kept"], dtype=np.int64),
            )
            for obj in lines[1:-1]
        ]
        return cls(
            n=head["n"],
            budget=head["budget"],
            painter_name=head["painter"],
            corrector_name=head["corrector"],
            seed=head["seed"],
            painter_seed=head["painter_seed"],
            corrector_seed=head["corrector_seed"],
            rounds=rounds,
            outcome=Outcome(trailer["outcome"]),
            forfeited_by=trailer["forfeited_by"],
        )


def replay(graph: Graph, transcript: Transcript) -> GameState:
    """Re-run a transcript through a fresh referee and verify the outcome.

    Forfeited games only validate the completed-round prefix: the illegal
    move itself is never part of a transcript.
    """
    if transcript.budget is None:
        raise ParameterError("replay requires a uniform-budget transcript")
    state = GameState.new_game(graph, transcript.budget)
    for rnd in transcript.rounds:
        state.present(rnd.presented)
        if not state.legal_responses_exist():
            if len(rnd.kept):
                raise StateError("transcript keeps a set in a lost position")
            state.respond(np.zeros(0, dtype=np.int64))
            break
        state.respond(rnd.kept)
    if transcript.forfeited_by is None and state.outcome is not transcript.outcome:
        raise StateError(
            f"replay outcome {state.outcome} != recorded {transcript.outcome}"
        )
    return state


# ---------------------------------------------------------------------------
# the game loop


def play(
    graph: Graph,
    budget: int,
    painter,
    corrector,
    seed: int,
    record: bool = True,
) -> Transcript:
    """Run one full game between two strategy factories.

    Factories expose ``build(graph, budget, seed) -> instance``; painter
    instances expose ``propose(state)``, correctors ``respond(state)``.
    An illegal move forfeits the game for the offending side.
    """
    painter_seed = child_seed(seed, 1)
    corrector_seed = child_seed(seed, 2)
    p_inst = painter.build(graph, budget, painter_seed)
    c_inst = corrector.build(graph, budget, corrector_seed)
    state = GameState.new_game(graph, budget)
    rounds: list[GameRound] = []
    stats = GameStats()
    forfeited_by: Optional[str] = None
    max_rounds = graph.n * (budget + 2) + 2

    while state.phase is not Phase.FINISHED:
        if state.round_index > max_rounds:
            raise StateError("round bound exceeded: referee accounting is broken")
        try:
            S = p_inst.propose(state)
            state.present(S)
        except IllegalMoveError as exc:
            if exc.offender != "painter":
                raise
            forfeited_by = "painter"
            state._finish(Outcome.CORRECTOR_WINS)
            break
        presented = state.pending.copy()
        if not state.legal_responses_exist():
            # painter has won; corrector is not consulted
            if record:
                rounds.append(GameRound(presented, np.zeros(0, dtype=np.int64)))
            stats.rounds += 1
            state.respond(np.zeros(0, dtype=np.int64))
            break
        try:
            I = c_inst.respond(state)
            kept = _vertex_array(graph, I)
            state.respond(kept)
        except (IllegalMoveError, ParameterError) as exc:
            if isinstance(exc, IllegalMoveError) and exc.offender != "corrector":
                raise
            forfeited_by = "corrector"
            state._finish(Outcome.PAINTER_WINS)
            break
        if record:
            rounds.append(GameRound(presented, kept))
        stats.rounds += 1
        spend = len(presented) - len(kept)
        label = getattr(c_inst, "last_class", None) or "other"
        stats.spend_by_class[label] = stats.spend_by_class.get(label, 0) + spend

    used = state.erasers_used()
    stats.max_erasers_used = int(used.max()) if len(used) else 0
    stats.total_erasers_used = int(used.sum())
    stats.fallback_count = int(getattr(c_inst, "fallback_count", 0))
    return Transcript(
        n=graph.n,
        budget=budget,
        painter_name=getattr(painter, "name", type(painter).__name__),
        corrector_name=getattr(corrector, "name", type(corrector).__name__),
        seed=seed,
        painter_seed=painter_seed,
        corrector_seed=corrector_seed,
        rounds=rounds,
        outcome=state.outcome,
        forfeited_by=forfeited_by,
        stats=stats,
    )
