# info.py
import sys

from colorama import Fore, Style

import foldsaddle.settings as sts
from foldsaddle.errors import FoldSaddleError
from foldsaddle.helpers.collections import to_tbl
from foldsaddle.normal_forms import FamilyParams, thresholds

info_beta = 0.5


def collect_infos(msg: str, init=False, info_list: list = []) -> list:
    if init:
        info_list.clear()
    if msg:
        info_list.append(str(msg))
    return info_list


def package_info(*args, **kwargs):
    collect_infos(f"""\n{Fore.YELLOW}{f" PACKAGE info ":#^80}{Style.RESET_ALL}""")
    collect_infos(f"{sts.generator_version = }\n{sts.package_dir = }\n{sts.test_dir = }")
    collect_infos(f"{sts.logs_dir = }")
    collect_infos(f"{Fore.YELLOW}Modify User settings{Fore.RESET}: {sts.user_settings_path}")
    collect_infos(f"$EXE: {sys.executable}")


def settings_info(*args, **kwargs):
    collect_infos(f"""\n{Fore.YELLOW}{f" ACTIVE SETTINGS ":#^80}{Style.RESET_ALL}""")
    rows = [(name, getattr(sts, name)) for name in sorted(sts.overridable)]
    collect_infos(to_tbl(rows, headers=["setting", "value"], floatfmt="g"))


def threshold_info(*args, beta: float = None, mu: float = None, **kwargs):
    beta = info_beta if beta is None else beta
    collect_infos(f"""\n{Fore.YELLOW}{f" THRESHOLDS beta = {beta} ":#^80}{Style.RESET_ALL}""")
    try:
        p = FamilyParams("inv", 0.0, beta, 0.0 if mu is None else mu)
        rows = [(k, v) for k, v in thresholds(p).to_dict().items() if v is not None]
    except FoldSaddleError as e:
        collect_infos(f"{Fore.RED}ERROR:{Fore.RESET} {e}")
        return
    collect_infos(to_tbl(rows, headers=["threshold", "value"], floatfmt=".10g"))


def main(*args, **kwargs) -> str:
    collect_infos("", True)
    for info in (package_info, settings_info, threshold_info):
        info(*args, **kwargs)
    collect_infos(
        f"{Fore.YELLOW}\nfor a case label: {Style.RESET_ALL}fs classify "
        f"{Fore.YELLOW}--tau{Style.RESET_ALL} inv {Fore.YELLOW}--lambda{Style.RESET_ALL} -0.2 "
        f"{Fore.YELLOW}--beta{Style.RESET_ALL} 0.5 {Fore.YELLOW}--mu{Style.RESET_ALL} -0.45"
    )
    out = "\n".join(collect_infos(""))
    print(out)
    return out
