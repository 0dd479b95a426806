import sys

from coxlab.cli import main

sys.exit(main())
