import sys

from termweight.cli import main

sys.exit(main())
