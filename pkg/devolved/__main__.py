import sys

from devolved.cli import main

sys.exit(main())
