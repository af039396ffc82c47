"""Range search counters"""

from pyextremal import vars as v


class RangeSearchStats:
    """
    Counters of NextItem, NextBeginRange and NextEndRange invocations and
    of subset queries. Counters only grow; stats from separate runs or
    workers merge by addition.
    """

    __slots__ = v.STAT_FIELDS

    def __init__(self, **counts):
        """Initialise all counters, optionally from keyword values."""
        for field in v.STAT_FIELDS:
            setattr(self, field, counts.pop(field, 0))
        if counts:
            raise ValueError(f"Unknown stats fields: {', '.join(sorted(counts))}")

    @property
    def range_search_calls(self):
        """Return NextBeginRange plus NextEndRange calls"""
        return self.next_begin_range_calls + self.next_end_range_calls

    def merge(self, other):
        """Add the counters of @other into this object and return it."""
        for field in v.STAT_FIELDS:
            setattr(self, field, getattr(self, field) + getattr(other, field))
        return self

    def __add__(self, other):
        if not isinstance(other, RangeSearchStats):
            return NotImplemented
        return RangeSearchStats(**self.as_dict()).merge(other)

    def __eq__(self, other):
        if not isinstance(other, RangeSearchStats):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def as_dict(self):
        """Return the counters as a plain dict"""
        return {field: getattr(self, field) for field in v.STAT_FIELDS}

    @classmethod
    def from_dict(cls, counts):
        """Build stats from a dict produced by as_dict()."""
        return cls(**counts)

    def __repr__(self):
        fields = ", ".join(f"{k}={val}" for k, val in self.as_dict().items())
        return f"RangeSearchStats({fields})"
