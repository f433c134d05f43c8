#!/usr/bin/env python
# -*- coding: utf-8 -*-

from __future__ import annotations

from enum import Enum
from typing import Optional, Tuple

from fvbe.exceptions import ConfigurationError
from fvbe.wave_speed import WaveSpeedMode


class TvdSplit(Enum):
    """
    Enum class for the two forms of the limited TVD correction.
    """

    # Limits the A and B combinations exactly as in the macroscopic expression, the default
    PRINTED = "printed"
    # Limits right- and left-going flux jumps against their upwind neighbours
    UPWIND = "upwind"

    @classmethod
    def from_flag(cls, flag: str) -> "TvdSplit":
        try:
            return cls(flag.lower())
        except ValueError:
            raise ConfigurationError(f"Unknown TVD split {flag!r}.") from None


class SchemeKind(Enum):
    """
    Enum class for the interface flux schemes.
    """

    KFDS = "kfds"
    KFDS_PLUS = "kfds+"
    KLW = "klw"
    TVD_KFDS = "tvd"
    TVD_KFDS_PLUS = "tvd+"

    # Public methods

    @classmethod
    def from_flag(cls, flag: str) -> "SchemeKind":
        try:
            return cls(flag.lower())
        except ValueError:
            raise ConfigurationError(f"Unknown scheme {flag!r}.") from None

    @property
    def allowed_modes(self) -> Tuple[WaveSpeedMode, ...]:
        return _ALLOWED_MODES[self]

    @property
    def default_mode(self) -> WaveSpeedMode:
        return _DEFAULT_MODE[self]

    @property
    def is_tvd(self) -> bool:
        return self in (SchemeKind.TVD_KFDS, SchemeKind.TVD_KFDS_PLUS)

    @property
    def uses_ratio(self) -> bool:
        """
        The flux depends on dt / dx.
        """
        return self in (SchemeKind.KLW, SchemeKind.TVD_KFDS, SchemeKind.TVD_KFDS_PLUS)

    @property
    def label(self) -> str:
        return _LABELS[self]

    def resolve_mode(self, mode: Optional[WaveSpeedMode]) -> WaveSpeedMode:
        """
        The wave-speed mode to run with.
        :param mode: Requested mode, the scheme default when None.
        :return: The mode.
        """
        if mode is None:
            return self.default_mode
        if mode not in self.allowed_modes:
            allowed = ", ".join(m.value for m in self.allowed_modes)
            raise ConfigurationError(
                f"Scheme {self.value} cannot run with lambda mode {mode.value} (allowed: {allowed})."
            )
        return mode

    def display_name(self, mode: WaveSpeedMode) -> str:
        """
        Name including the RH marker, e.g. KLW+ for KLW with RH lambda.
        """
        if self is SchemeKind.KLW and mode is WaveSpeedMode.RH:
            return "KLW+"
        return self.label


_ALLOWED_MODES = {
    SchemeKind.KFDS: (WaveSpeedMode.CE,),
    SchemeKind.KFDS_PLUS: (WaveSpeedMode.RH, WaveSpeedMode.HYBRID),
    SchemeKind.KLW: (WaveSpeedMode.CE, WaveSpeedMode.RH),
    SchemeKind.TVD_KFDS: (WaveSpeedMode.CE,),
    SchemeKind.TVD_KFDS_PLUS: (WaveSpeedMode.RH, WaveSpeedMode.HYBRID),
}

_DEFAULT_MODE = {
    SchemeKind.KFDS: WaveSpeedMode.CE,
    SchemeKind.KFDS_PLUS: WaveSpeedMode.RH,
    SchemeKind.KLW: WaveSpeedMode.CE,
    SchemeKind.TVD_KFDS: WaveSpeedMode.CE,
    SchemeKind.TVD_KFDS_PLUS: WaveSpeedMode.HYBRID,
}

_LABELS = {
    SchemeKind.KFDS: "KFDS",
    SchemeKind.KFDS_PLUS: "KFDS+",
    SchemeKind.KLW: "KLW",
    SchemeKind.TVD_KFDS: "TVD-KFDS",
    SchemeKind.TVD_KFDS_PLUS: "TVD-KFDS+",
}


__all__ = ["SchemeKind", "TvdSplit"]
