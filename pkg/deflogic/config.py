import os
from os.path import abspath
from os.path import dirname

# print out lots of stuff
debug = os.environ.get("DEFLOGIC_DEBUG") == "1"

# an unreasonable amount of debug printouts (every SAT query)
trace = False

# refuse to enumerate processes of theories with more defaults than this
max_defaults = int(os.environ.get("DEFLOGIC_MAX_DEFAULTS", "8"))

# skip subtrees of the process tree rooted at unsuccessful processes
prune_processes = True

# check that the extension handed to t_rc/t_rj is a strongest one
verify_strongest = True

# forget cached consistency results once the cache grows past this size
sat_cache_size = 1 << 16

# fresh atoms introduced by translations and generators
fresh_prefix = "__"

# suffix for the primed alphabet X'
primed_tag = "__p"

# suffix stem for the indexed alphabets X_1 .. X_m
copy_tag = "__c"

# root folder of the project
base_dir = dirname(dirname(abspath(__file__)))

