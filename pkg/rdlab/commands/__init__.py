# -*- coding: utf-8 -*-
"""
Subcommand registry - one module per subcommand.

Each module exposes NAME, HELP, add_arguments(parser) and
run(args, config) -> dict; see COMMAND_MAP.md.
"""
from __future__ import annotations

from rdlab.commands import bitangents, bound, count, lines, monodromy, reduce, selftest, solve

COMMANDS = {
    module.NAME: module
    for module in (reduce, solve, bound, lines, bitangents, monodromy, count, selftest)
}

__all__ = ["COMMANDS"]
