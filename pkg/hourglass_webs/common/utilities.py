import datetime
import json
import os
import sys
import traceback
from functools import lru_cache

_LEVELS = {'Debug': 10, 'Info': 20, 'Warning': 30, 'Error': 40}

DEFAULT_CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'resources', 'engine_config.json')

DEFAULT_CONFIG = {
    'max_nodes': 200000,
    'max_workers': 4,
    'log_level': 'Info',
    'growth_strategy': 'deterministic',
    'render': {
        'width': 640,
        'height': 640,
        'margin': 40,
        'trip_colors': ['#7b3fa0', '#e08a1e', '#2e9e4f'],
    },
}


def _threshold() -> int:
    level = os.environ.get('HOURGLASS_LOG_LEVEL') or load_engine_config().get('log_level', 'Info')
    return _LEVELS.get(level, 20)


def log_message(log_level, message, exception=None, context=None):
    """
    Logs a message with the specified log level to stderr.

    :param log_level: The severity level of the log message.
    :param message: The log message to be logged.
    :param exception: An exception object to log the exception details and traceback. Defaults to None.
    :param context: Additional contextual information. Defaults to None.
    """

    level = _LEVELS.get(log_level, 40)
    if level < _LEVELS['Error'] and level < _threshold():
        return
    timestamp = datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")
    log_entry = f"[{log_level}] {timestamp} - {message}"
    if exception:
        formatted = ''.join(traceback.format_exception(type(exception), exception, exception.__traceback__))
        log_entry += f"\nException: {exception}\n{formatted}"
    if context:
        log_entry += f"\nContext: {context}"
    print(log_entry, file=sys.stderr)


def read_json_file(file_path: str) -> dict:
    try:
        with open(file_path, 'r') as file:
            return json.load(file)
    except FileNotFoundError as e:
        log_message(log_level='Error',
                    message=f'Error: File not found at {file_path}.',
                    exception=e)
        return {}
    except json.JSONDecodeError as e:
        log_message(log_level='Error',
                    message=f'Error: Failed to decode JSON',
                    exception=e)
        return {}


@lru_cache(maxsize=8)
def _load_config_file(file_path: str) -> dict:
    if not os.path.exists(file_path):
        return {}
    return read_json_file(file_path)


def load_engine_config(file_path: str = None) -> dict:
    """
    Loads the engine configuration, layering the file over the built-in defaults.

    :param file_path: Optional path of a configuration file. Falls back to HOURGLASS_CONFIG_PATH, then to the packaged file.
    :return: The merged configuration dictionary.
    """

    path = file_path or os.environ.get('HOURGLASS_CONFIG_PATH') or DEFAULT_CONFIG_PATH
    config = {**DEFAULT_CONFIG, **_load_config_file(path)}
    config['render'] = {**DEFAULT_CONFIG['render'], **config.get('render', {})}
    return config


def get_max_nodes(override: int = None) -> int:
    """
    Resolves the search cap: explicit override, then HOURGLASS_MAX_NODES, then configuration.
    """

    if override is not None:
        return int(override)
    env_value = os.environ.get('HOURGLASS_MAX_NODES')
    if env_value:
        return int(env_value)
    return int(load_engine_config().get('max_nodes', DEFAULT_CONFIG['max_nodes']))


def get_max_workers() -> int:
    return max(1, int(load_engine_config().get('max_workers', 1)))


def dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)
