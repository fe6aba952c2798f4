"""Configuration loader with sane defaults."""

import os
from pathlib import Path
from dotenv import load_dotenv


def load_config():
    """
    Load configuration from .env file with conservative defaults.

    Returns:
        dict: Configuration dictionary with all settings
    """
    # Load .env file
    env_path = Path(__file__).parent.parent / '.env'
    load_dotenv(env_path)

    config = {
        # Size guards
        'BSF_MAX_BASIS': int(os.getenv('BSF_MAX_BASIS', '10000000')),
        'PERMANENT_MAX_SIZE': int(os.getenv('BSF_PERMANENT_MAX', '30')),
        'ORACLE_MAX_M': int(os.getenv('BSF_ORACLE_MAX_M', '3')),
        'MAX_GROUP_ORDER': int(os.getenv('BSF_MAX_GROUP_ORDER', '4096')),

        # Data-parallel workers for permanent loops
        'THREADS': int(os.getenv('BSF_THREADS', '1')),

        # Logging
        'LOG_LEVEL': os.getenv('LOG_LEVEL', 'INFO'),
        'LOG_FORMAT': os.getenv('LOG_FORMAT', 'json'),
        'LOG_DIR': os.getenv('LOG_DIR', ''),
    }

    # Validate critical settings
    if config['BSF_MAX_BASIS'] < 1:
        raise ValueError("BSF_MAX_BASIS must be positive")

    if config['PERMANENT_MAX_SIZE'] > 30:
        raise ValueError("BSF_PERMANENT_MAX too high (max 30, Ryser is O(2^k k))")

    if not 1 <= config['THREADS'] <= 64:
        raise ValueError("BSF_THREADS must be between 1 and 64")

    return config
