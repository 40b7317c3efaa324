# Parsers module
from .state_parser import StateSpec, parse_state_spec, parse_state_file, parse_state_text
