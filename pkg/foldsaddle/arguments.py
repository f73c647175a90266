"""
    parses foldsaddle arguments and keyword arguments
    args are provided by a function call to mk_args()

    RUN like:
    import foldsaddle.arguments
    kwargs.update(arguments.mk_args().__dict__)
"""

import argparse
import sys

from colorama import Fore, Style

apis = ("classify", "portrait", "scan", "return-map", "verify", "demo-spring", "info")


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors leaving through exit code 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{Fore.RED}usage error:{Style.RESET_ALL} {message}", file=sys.stderr)
        sys.exit(1)


def mk_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="fs", description="run: fs classify --tau vis --lambda 0 --beta 0 --mu 0")
    parser.add_argument(
        "api",
        metavar="api",
        nargs=None,
        choices=apis,
        help=f"one of {', '.join(apis)}, see foldsaddle.apis",
    )

    parser.add_argument(
        "--tau",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="fold type of X: inv or vis",
    )

    parser.add_argument(
        "--lambda",
        dest="lam",
        required=False,
        nargs=None,
        const=None,
        type=float,
        default=None,
        help="position of the fold of X on Sigma, -1 < lambda < 1",
    )

    parser.add_argument(
        "--beta",
        required=False,
        nargs=None,
        const=None,
        type=float,
        default=None,
        help="depth of the saddle of Y below Sigma, |beta| < sqrt(3)/2",
    )

    parser.add_argument(
        "--mu",
        required=False,
        nargs=None,
        const=None,
        type=float,
        default=None,
        help="eigenvalue unfolding mu = alpha + 1, -eps0 < mu < 1",
    )

    parser.add_argument(
        "--lambda-range",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="scan axis a:b or a:b:n, e.g. -0.9:0.9:41",
    )

    parser.add_argument(
        "--beta-range",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="scan axis a:b or a:b:n, e.g. -0.4:0.6:6",
    )

    parser.add_argument(
        "--mu-rule",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="scan slice: mu0_curve (mu = mu0(beta) + offset) or fixed (mu = --mu)",
    )

    parser.add_argument(
        "--mu-offset",
        required=False,
        nargs=None,
        const=None,
        type=float,
        default=None,
        help="offset from the resonance curve for the mu0_curve rule",
    )

    parser.add_argument(
        "-r",
        "--resolution",
        required=False,
        nargs=None,
        const=None,
        type=int,
        default=None,
        help="grid points per axis (scan) or samples (return-map)",
    )

    parser.add_argument(
        "--boundary-lane",
        required=False,
        nargs="?",
        const=True,
        type=bool,
        default=None,
        help="scan also samples every threshold of each beta row",
    )

    parser.add_argument(
        "-w",
        "--workers",
        required=False,
        nargs=None,
        const=None,
        type=int,
        default=None,
        help="workers used by scan, threads or processes as scan_pool says",
    )

    parser.add_argument(
        "-o",
        "--out",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="output file, stdout if omitted",
    )

    parser.add_argument(
        "-f",
        "--format",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="csv, json or svg (svg for portrait, scan and demo-spring only)",
    )

    parser.add_argument(
        "--seed-grid",
        required=False,
        nargs=None,
        const=None,
        type=int,
        default=None,
        help="portrait trajectory seeds per row and column",
    )

    parser.add_argument(
        "--tol-override",
        required=False,
        nargs="+",
        const=None,
        type=str,
        default=None,
        help="override settings for this run, e.g. --tol-override rtol=1e-12 cycle_grid=20000",
    )

    parser.add_argument(
        "-c",
        "--config",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="JSON file with run parameters, flags take precedence",
    )

    parser.add_argument(
        "--spring",
        required=False,
        nargs=4,
        const=None,
        type=float,
        default=None,
        metavar=("a", "b", "c", "A"),
        help="spring-mass coefficients of a x'' + b x' + c x = g(x)",
    )

    parser.add_argument(
        "--variant",
        required=False,
        nargs=None,
        const=None,
        type=str,
        default=None,
        help="spring-mass switching term: invisible or visible",
    )

    parser.add_argument(
        "--counts",
        required=False,
        nargs="?",
        const=True,
        type=bool,
        default=None,
        help="verify also runs the six case-count scans (slow)",
    )

    parser.add_argument(
        "-v",
        "--verbose",
        required=False,
        nargs="?",
        const=1,
        type=int,
        default=0,
        help="0:silent, 1:user, 2:debug",
    )
    return parser


def mk_args(argv: list = None) -> argparse.Namespace:
    return mk_parser().parse_args(argv)


if __name__ == "__main__":
    print(mk_args())
