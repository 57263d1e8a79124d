package com.minimart.user;

import lombok.Data;

@Data
public class UserDto {
    private String id;
    private String email;
}
