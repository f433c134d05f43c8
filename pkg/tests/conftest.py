#!/usr/bin/env python3
# -*- coding: utf-8 -*-
""" Fixtures and configuration for pytest. """
import os
import sys

import pytest

# Ensure src/ is on sys.path for imports in tests
ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir))
SRC = os.path.join(ROOT, "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)


class RecordingLogger:
    """
    Stand-in for LogIt that keeps (level, message) pairs.
    """

    def __init__(self) -> None:
        self.records = []

    def messages(self, level: str) -> list:
        return [message for kind, message in self.records if kind == level]

    def info(self, message: str) -> None:
        self.records.append(("info", message))

    def show(self, message: str) -> None:
        self.records.append(("show", message))

    def success(self, message: str) -> None:
        self.records.append(("success", message))

    def warning(self, message: str) -> None:
        self.records.append(("warning", message))

    def separator(self) -> None:
        self.records.append(("separator", ""))


@pytest.fixture
def recording_logger() -> RecordingLogger:
    return RecordingLogger()
