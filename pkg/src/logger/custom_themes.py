# Console styles for diagnostics (stderr)
from rich.theme import Theme

ct = Theme(
    {
        'default': 'bright_white',
        'info': 'bright_white',
        'debug': 'orange1',
        'warning': 'bright_yellow',
        'error': 'bold italic red',
        'success': 'bright_green',
        'term': 'bright_cyan',
        'seed': 'aquamarine1',
        'engine': 'dark_orange',
    }
)
