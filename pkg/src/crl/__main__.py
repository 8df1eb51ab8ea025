import sys

from crl.cli import main

sys.exit(main())
