import sys

from maxtrace.cli import main

sys.exit(main())
