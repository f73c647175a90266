"""
    Entry point for foldsaddle shell calls
    ###################################################################################

    __main__.py imports the api module from foldsaddle.apis >> api_module.py
                and runs it
                api is provided as first positional argument, dashes become underscores

    exit codes: 0 ok, 1 usage or invalid input, 2 structural mismatch, 3 verification failure

    ###################################################################################

    for user info runs:
        python -m foldsaddle info
    a case label:
        fs classify --tau vis --lambda 0 --beta 0 --mu 0


"""

import colorama as color

color.init()
import importlib
import logging
import sys

import foldsaddle.arguments as arguments
import foldsaddle.contracts as contracts
import foldsaddle.logs as logs
import foldsaddle.settings as sts
from foldsaddle.errors import FoldSaddleError

logger = logging.getLogger(__name__)


def runable(*args, api: str, **kwargs):
    """
    imports api as a package and returns it
    """
    return importlib.import_module(f"{sts.package_name}.apis.{api.replace('-', '_')}")


def main(*args, argv: list = None, **kwargs) -> int:
    """
    to runable from shell these arguments are passed in
    runs api if legitimate and returns the exit code
    """
    kwargs = arguments.mk_args(argv).__dict__

    # kwargs are validated against enforced contract
    kwargs = contracts.checks(*args, **kwargs)
    logs.setup_logging(log_filename=f"{sts.session_time_stamp}_{kwargs['api']}.log")
    logger.info(f"run {kwargs}")
    try:
        runable(*args, **kwargs).main(*args, **kwargs)
    except FoldSaddleError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"{color.Fore.RED}{type(e).__name__}:{color.Style.RESET_ALL} {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
