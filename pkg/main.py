#!/usr/bin/env python3
"""
Main entry point for the reality-domain command-line tool.
"""

import sys
import logging
from pathlib import Path

# Add src directory to Python path
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

# Configure logging before any other application imports
from config.logging_config import setup_logging  # noqa: E402

setup_logging(level="WARNING", log_file=None)

logger = logging.getLogger(__name__)


def main():
    """Main application entry point."""
    try:
        from cli.commands import main as run_cli

        return run_cli(sys.argv[1:])

    except ImportError as e:
        logger.critical("A required package is not installed: %s", e)
        print("Error: missing dependencies.")
        print("Please install them with:")
        print("pip install -r requirements.txt")
        return 2

    except Exception as e:
        logger.critical("Application error: %s", e, exc_info=True)
        return 3


if __name__ == "__main__":
    exit_code = main()
    sys.exit(exit_code)
