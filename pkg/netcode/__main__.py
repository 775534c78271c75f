import sys

from netcode.cli.main import main

sys.exit(main())
