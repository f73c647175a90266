# settings.py
import math, os, re, yaml
from datetime import datetime as dt

package_name = "foldsaddle"
package_dir = os.path.dirname(__file__)
project_dir = os.path.dirname(package_dir)
project_name = os.path.basename(project_dir)

apis_dir = os.path.join(package_dir, "apis")

test_dir = os.path.join(package_dir, "test")
test_data_dir = os.path.join(test_dir, "data")

time_stamp = lambda: re.sub(r"([: .])", r"-", str(dt.now()))
session_time_stamp = time_stamp()

generator_version = "foldsaddle 0.1.0"

# parameter box of the normal forms
lambda_bound = 1.0
beta_bound = math.sqrt(3) / 2
# the T3 and T6 slices only ask for mu > -eps0, eps0 is not pinned down
eps0 = 3.0
param_slack = 1e-12
default_domain = (-1.5, 1.5, -1.5, 1.5)
# inv pseudo-equilibria are searched left of the second fold of X at lambda + 1
inv_local_reach = 1.0

# pointwise Filippov theory
tangency_tol = 1e-9
pseudo_eq_tol = 1e-9
denominator_tol = 1e-12
h_prime_rel_step = 1e-6
fold_grid = 2001
fold_xtol = 1e-12
pe_grid = 2000

# integration
integrator = "DOP853"
rtol = 1e-10
atol = 1e-10
event_ytol = 1e-12
sliding_stop = 1e-10
t_max = 20.0
max_events = 200
tangent_step = 1e-7

# return map
gamma_y_t_span = 50.0
cycle_grid = 10000
fixed_point_tol = 1e-9
nonhyperbolic_tol = 1e-6
return_step = 1e-6
sn_window_offsets = [1e-2, 3e-3, 1e-3, 1e-4, 1e-5]
sn_profile_grid = 4000
sn_lambda_xtol = 1e-8

# classification
boundary_tol = 1e-9
# cells this close to a loop or tangency threshold are labelled but not verified,
# the outer canard cycle sits against the edge of the return domain there
verify_margin = 5e-5
# the saddle-node is only known to sn_lambda_xtol
sn_verify_margin = 1e-7
# computed degeneracy behind a boundary label
coincidence_tol = 1e-8
connection_tol = 1e-7
sn_gap_tol = 1e-6
sn_slope_tol = 1e-3
slice_offsets = {"T2": 0.05, "T3": -0.05}
slice_mu = {"T4": 0.0, "T5": 0.5, "T6": -0.5}
workers = 1
# thread or process, solve_ivp cells hold the GIL so threads mostly overlap I/O
scan_pool = "thread"

# rendering
svg_size = 600
svg_precision = 4
portrait_t_max = 8.0

# names that may be changed per run with --tol-override
overridable = {
    "tangency_tol",
    "pseudo_eq_tol",
    "denominator_tol",
    "h_prime_rel_step",
    "fold_grid",
    "pe_grid",
    "integrator",
    "rtol",
    "atol",
    "event_ytol",
    "sliding_stop",
    "t_max",
    "max_events",
    "cycle_grid",
    "fixed_point_tol",
    "nonhyperbolic_tol",
    "return_step",
    "sn_profile_grid",
    "sn_lambda_xtol",
    "boundary_tol",
    "verify_margin",
    "sn_verify_margin",
    "coincidence_tol",
    "connection_tol",
    "sn_gap_tol",
    "sn_slope_tol",
    "eps0",
    "workers",
    "scan_pool",
}

resources_dir = os.path.expanduser(f"~{os.sep}.{package_name}")
logs_dir = os.path.join(resources_dir, "logs")
if not os.path.exists(resources_dir):
    os.makedirs(resources_dir)

user_settings_name = "settings.yml"
user_settings_path = os.path.join(resources_dir, user_settings_name)
if not os.path.exists(user_settings_path):
    with open(user_settings_path, "w") as f:
        yaml.dump({"package_name": package_name, "workers": workers}, f)


def load_user_settings():
    """Load user settings from the YAML file."""
    if not os.path.exists(user_settings_path):
        return {}

    with open(user_settings_path, "r") as f:
        try:
            return yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            print(f"Error loading user settings: {e}")
            return {}


# user settings override the defaults above
user_settings = load_user_settings()
globals().update(user_settings)
