"""
Exceptions raised by the hourglass web engine.

The command line maps them to exit codes: validation problems exit with 2 and
search caps exit with 3.
"""


class HourglassError(Exception):
    """
    Base class for all engine errors.

    Attributes:
        message (str): Human readable description of the failure.
        context (dict): Optional details that are logged alongside the message.
    """

    exit_code = 1

    def __init__(self, message: str, context: dict = None):
        super().__init__(message)
        self.message = message
        self.context = context or {}


class WebValidationError(HourglassError):
    exit_code = 2


class WordParseError(WebValidationError):
    """
    Raised when a word cannot be parsed. `position` is the 0-based character offset.
    """

    def __init__(self, message: str, text: str = '', position: int = 0):
        super().__init__(f'{message} at position {position}', context={'text': text, 'position': position})
        self.text = text
        self.position = position


class ResourceCapExceeded(HourglassError):
    exit_code = 3

    def __init__(self, message: str, limit: int, context: dict = None):
        super().__init__(message, context={**(context or {}), 'max_nodes': limit})
        self.limit = limit


class MoveGuardError(HourglassError):
    """
    Raised when an applied move changes the trip permutations of a graph.
    """
