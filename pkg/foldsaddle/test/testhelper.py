"""
Fixtures for tests that run fs commands writing files or reading run configs.

Example:

@helpers.test_setup(temp_file="run_config.json", temp_chdir="temp_file")
def test_config_precedence(self, tempDataPath, *args, **kwargs):
    code, out = run(["classify", "--config", tempDataPath])

temp_file:      name of a file in test/data copied into a scratch dir named after the test,
                None copies empty.txt so the scratch dir still exists
temp_chdir:     'temp_file' makes the scratch dir the cwd, so '-o portrait.svg' lands there
temp_settings:  patches foldsaddle.settings tolerances and restores them afterwards
"""

import functools, os, shutil
from contextlib import contextmanager

import foldsaddle.settings as sts


@contextmanager
def temp_chdir(tempDataPath: str, *args, temp_chdir: str = None, **kwargs) -> None:
    """cwd is the scratch dir (or temp_chdir) while the context is open"""
    cwd = os.getcwd()
    if temp_chdir == "temp_file":
        if not os.path.exists(tempDataPath):
            raise FileNotFoundError(f"testhelper.temp_chdir: {tempDataPath} not found")
        temp_chdir = tempDataPath if os.path.isdir(tempDataPath) else os.path.dirname(tempDataPath)
    os.chdir(temp_chdir or cwd)
    try:
        yield
    finally:
        os.chdir(cwd)


@contextmanager
def temp_settings(**overrides) -> None:
    """Replaces foldsaddle.settings values within the context"""
    origin = {k: getattr(sts, k) for k in overrides}
    try:
        for k, v in overrides.items():
            setattr(sts, k, v)
        yield
    finally:
        for k, v in origin.items():
            setattr(sts, k, v)


def test_setup(*args, **kwargs):
    """
    Decorator combining temp_test_file and temp_chdir. The test receives the path of
    the copied data file as tempDataPath.
    """

    def decorator(test_func):
        @functools.wraps(test_func)
        def wrapper(self, *inner_args, **inner_kwargs):
            with temp_test_file(test_func.__name__, *args, **kwargs) as tempDataPath:
                with temp_chdir(tempDataPath, *args, **kwargs):
                    return test_func(self, tempDataPath, *inner_args, **inner_kwargs)

        return wrapper

    return decorator


@contextmanager
def temp_test_file(scratch_name: str, *args, temp_file: str = None, **kwargs) -> str:
    """
    Copies test/data/<temp_file> into test/data/<scratch_name>/ and yields the copy.
    The scratch dir and every file a command wrote into it are removed on exit.
    """
    temp_file = temp_file or "empty.txt"
    source = os.path.join(sts.test_data_dir, temp_file)
    if not os.path.isfile(source):
        raise FileNotFoundError(f"testhelper.temp_test_file: {source} not found")
    scratch = os.path.join(sts.test_data_dir, scratch_name)
    os.makedirs(scratch, exist_ok=True)
    try:
        yield shutil.copy(source, os.path.join(scratch, temp_file))
    finally:
        shutil.rmtree(scratch, ignore_errors=True)
