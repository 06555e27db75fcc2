from squeezeflow.cli.app import main

raise SystemExit(main())
