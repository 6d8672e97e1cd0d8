"""Operation counters used as complexity proxies.

Wall time is too noisy to check asymptotics at desk scale, so the engines
count LCE queries and range-structure node visits instead.  Every engine
instance owns one Counters object and threads it through its data
structures.
"""


class Counters:
    __slots__ = ("lce_calls", "range_visits")

    def __init__(self):
        self.lce_calls = 0
        self.range_visits = 0

    def snapshot(self):
        return (self.lce_calls, self.range_visits)

    def delta(self, snap):
        return (self.lce_calls - snap[0], self.range_visits - snap[1])

    def total(self):
        return self.lce_calls + self.range_visits

    def reset(self):
        self.lce_calls = 0
        self.range_visits = 0

    def __repr__(self):
        return f"Counters(lce={self.lce_calls}, range={self.range_visits})"
