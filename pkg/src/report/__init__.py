# Reports, diagrams and command line
