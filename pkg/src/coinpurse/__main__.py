import sys

from coinpurse.cli import main

sys.exit(main())
