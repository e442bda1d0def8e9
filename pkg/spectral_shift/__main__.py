import sys

from spectral_shift.SsfCommandLine import main

sys.exit(main())
