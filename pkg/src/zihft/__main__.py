import sys

from zihft.cli import main

sys.exit(main())
