"""
Reading and writing tournament files.

A tournament file is a JSON document:

    {
      "n": 4,
      "travel": [[0, 0, 0, 1, 1, 1], ...],
      "schedule": [[2, 3, 4, 2, 3, 4], ...]
    }

`schedule` is optional and holds 1-based team ids.
"""

import json
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from mttp.errors import ShapeError, TournamentFileError
from mttp.models.tournament import InstanceSize, ScheduleMatrix, Tournament, TravelMatrix


class TournamentDocument(BaseModel):
    model_config = ConfigDict(extra='forbid')

    n: int
    travel: List[List[int]]
    schedule: Optional[List[List[int]]] = None

    @field_validator('n')
    @classmethod
    def _valid_team_count(cls, n):
        InstanceSize(n)
        return n

    def to_tournament(self):
        try:
            travel = TravelMatrix(self.travel)
        except ShapeError as e:
            raise TournamentFileError(f"travel: {e}")
        try:
            schedule = ScheduleMatrix.from_team_ids(self.schedule) if self.schedule is not None else None
        except ShapeError as e:
            raise TournamentFileError(f"schedule: {e}")
        return Tournament(InstanceSize(self.n), travel, schedule)


def _describe(error):
    location = '.'.join(str(part) for part in error['loc']) or '<document>'
    return f"{location}: {error['msg']}"


def parse_tournament(text, source='<string>'):
    try:
        document = TournamentDocument.model_validate_json(text)
    except ValidationError as e:
        details = '; '.join(_describe(error) for error in e.errors())
        raise TournamentFileError(f"{source}: {details}")
    try:
        return document.to_tournament()
    except TournamentFileError as e:
        raise TournamentFileError(f"{source}: {e}")


def load_tournament(path):
    """Parse a tournament file; OSError propagates for unreadable paths."""
    return parse_tournament(Path(path).read_text(encoding='utf-8'), source=str(path))


def _render_rows(rows):
    return ',\n'.join(f"    {json.dumps(row)}" for row in rows)


def render_tournament(tournament):
    parts = [f'  "n": {tournament.size.n}',
             f'  "travel": [\n{_render_rows(tournament.travel.tolist())}\n  ]']
    if tournament.schedule is not None:
        parts.append(f'  "schedule": [\n{_render_rows(tournament.schedule.to_team_ids())}\n  ]')
    return '{\n' + ',\n'.join(parts) + '\n}\n'


def dump_tournament(tournament, path):
    Path(path).write_text(render_tournament(tournament), encoding='utf-8')
