#!/usr/bin/env python
# -*- coding:utf-8 -*-
import dataclasses
import logging

logger = logging.getLogger(__name__)


class TwinBase:
    """
    Base of the stateful twin components. Subclasses keep their current
    value-typed state in ``self.state`` and render it in ``__str__``.
    """

    def __init__(self, state):
        self.state = state

    def __repr__(self):
        return f"<{self.__class__.__module__}.{self.__class__.__name__} {str(self)}>"

    def __str__(self):
        raise NotImplementedError

    def to_dict(self):
        """
        Snapshot of the current state for telemetry and debugging.
        """
        if dataclasses.is_dataclass(self.state):
            return dataclasses.asdict(self.state)
        return dict(self.state)

    def __eq__(self, other):
        """
        Return true if the other object is the same kind of component in
        the same state
        """
        if not isinstance(other, self.__class__):
            return False
        return other.state == self.state
