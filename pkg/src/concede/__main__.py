from concede.cli import main

main()
