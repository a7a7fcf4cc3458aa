import os
import shutil
from contextlib import contextmanager
from optparse import Values


@contextmanager
def temp_dirs(options: Values):
    """
    Create temporary directories for testing
    :param options: Values, options
    :return: None
    """
    dirs = []
    if getattr(options, 'out', None):
        dirs.append(os.path.dirname(options.out))
    try:
        # Create temporary directories
        for dir_ in dirs:
            os.makedirs(dir_, exist_ok=True)

        # Yield to the test
        yield

    finally:
        # Remove temporary directories
        for dir_ in dirs:
            shutil.rmtree(dir_, ignore_errors=True)
