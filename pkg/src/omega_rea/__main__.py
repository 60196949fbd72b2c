import sys

from omega_rea.cli import main

sys.exit(main())
