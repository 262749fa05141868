from vacrad.cli import main

main()
