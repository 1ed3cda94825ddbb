"""Shared record of acceptance-criterion outcomes, printed at the end of the run."""

LINES: list[str] = []
