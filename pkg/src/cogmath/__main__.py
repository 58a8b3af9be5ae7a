from cogmath.cli import main

main()
