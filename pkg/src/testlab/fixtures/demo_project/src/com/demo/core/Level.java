package com.demo.core;

public enum Level {
    LOW, MEDIUM, HIGH;

    public Level next() {
        switch (this) {
            case LOW:
                return MEDIUM;
            case MEDIUM:
                return HIGH;
            default:
                return HIGH;
        }
    }

    public boolean atLeast(Level other) {
        return ordinal() >= other.ordinal();
    }
}
