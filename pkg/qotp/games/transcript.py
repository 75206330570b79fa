from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class GameEvent(BaseModel):
    """One step of a game run, e.g. a challenge query or a measurement."""

    kind: str
    data: Dict[str, Any] = Field(default_factory=dict)


class GameTranscript(BaseModel):
    """
    Ordered record of one game run.

    ``seed`` together with ``game``, ``params`` and the adversary id fully
    determines the run, so replaying the seed reproduces ``win``.
    """

    game: str
    seed: int
    adversary: str
    params: Dict[str, Any] = Field(default_factory=dict)
    events: List[GameEvent] = Field(default_factory=list)
    win: bool = False
    queries: int = 0
    note: Optional[str] = None

    def record(self, kind: str, **data: Any) -> None:
        self.events.append(GameEvent(kind=kind, data=data))

    def kinds(self) -> List[str]:
        return [event.kind for event in self.events]

    def first(self, kind: str) -> Optional[GameEvent]:
        for event in self.events:
            if event.kind == kind:
                return event
        return None
