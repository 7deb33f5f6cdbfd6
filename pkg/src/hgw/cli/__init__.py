"""Command-line front end and the session stanza language."""

from .config import SessionConfig
from .dsl import DSLError, Session, parse_session, print_session, session_from_system
from .main import exit_code, run
