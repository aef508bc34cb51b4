import sys

from gnk.cli import main

sys.exit(main())
